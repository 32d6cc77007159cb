#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pctl_bsat/dtmc.hpp"
#include "pctl_bsat/formula.hpp"

namespace pctl {

struct EnumSpace {
  std::size_t states = 1;
  std::uint32_t denominator = 1;
  std::vector<std::string> atoms;
};

class SpaceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kMaxEnumeratedModels = 10'000'000;

/// C(D+b-1, b-1)^b * 2^(b*|atoms|), saturating at UINT64_MAX.
std::uint64_t model_count(const EnumSpace& space);

/// Every chain with exactly `states` states, rows that are compositions of
/// D (probabilities n/D) and every labeling over `atoms`. Order is
/// lexicographic: the row vector of row 0 is most significant, labelings
/// vary fastest.
class ModelEnumerator {
 public:
  /// Throws SpaceTooLarge if model_count(space) > kMaxEnumeratedModels.
  explicit ModelEnumerator(EnumSpace space);

  std::optional<Dtmc> next();
  std::uint64_t size() const { return size_; }

 private:
  bool advance();

  EnumSpace space_;
  std::uint64_t size_;
  std::vector<std::vector<std::uint32_t>> compositions_;
  std::vector<std::size_t> rows_;  // composition index per row
  std::uint64_t labeling_ = 0;
  bool done_ = false;
};

/// First enumerated model satisfying f at state 0, if any. The atoms of
/// normalize(f) define the labeling space.
std::optional<Dtmc> brute_force_bsat(const Formula& f, std::size_t states,
                                     std::uint32_t denominator);
std::optional<Dtmc> brute_force_bsat(const Formula& f, const EnumSpace& space);

struct EnumerationSummary {
  std::uint64_t space_size = 0;
  std::uint64_t satisfying = 0;
  std::optional<Dtmc> first_witness;
};

/// Scans the whole space, counting models of f.
EnumerationSummary count_models(const Formula& f, const EnumSpace& space);

}  // namespace pctl
