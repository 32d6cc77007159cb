#include "pctl_bsat/enumerate.hpp"

#include <limits>

#include "pctl_bsat/checker.hpp"

namespace pctl {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step
    const std::uint64_t num = saturating_mul(r, n - k + i);
    if (num == std::numeric_limits<std::uint64_t>::max()) return num;
    r = num / i;
  }
  return r;
}

// All compositions of total into parts nonnegative parts, lexicographic.
void compositions(std::uint32_t total, std::size_t parts, std::vector<std::uint32_t>& prefix,
                  std::vector<std::vector<std::uint32_t>>& out) {
  if (prefix.size() + 1 == parts) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::uint32_t v = 0; v <= total; ++v) {
    prefix.push_back(v);
    compositions(total - v, parts, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::uint64_t model_count(const EnumSpace& space) {
  const std::uint64_t per_row = binomial(space.denominator + space.states - 1, space.states - 1);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < space.states; ++i) total = saturating_mul(total, per_row);
  const std::size_t bits = space.states * space.atoms.size();
  for (std::size_t i = 0; i < bits; ++i) total = saturating_mul(total, 2);
  return total;
}

ModelEnumerator::ModelEnumerator(EnumSpace space)
    : space_(std::move(space)), size_(model_count(space_)) {
  if (space_.states < 1 || space_.denominator < 1) {
    throw std::invalid_argument("enumeration needs states >= 1 and denominator >= 1");
  }
  if (size_ > kMaxEnumeratedModels) {
    throw SpaceTooLarge("space of " +
                        (size_ == std::numeric_limits<std::uint64_t>::max()
                             ? std::string("more than 2^64")
                             : std::to_string(size_)) +
                        " models exceeds the limit of " + std::to_string(kMaxEnumeratedModels));
  }
  std::vector<std::uint32_t> prefix;
  compositions(space_.denominator, space_.states, prefix, compositions_);
  rows_.assign(space_.states, 0);
}

bool ModelEnumerator::advance() {
  const std::size_t bits = space_.states * space_.atoms.size();
  if (++labeling_ < (std::uint64_t{1} << bits)) return true;
  labeling_ = 0;
  for (std::size_t r = space_.states; r-- > 0;) {
    if (++rows_[r] < compositions_.size()) return true;
    rows_[r] = 0;
  }
  return false;
}

std::optional<Dtmc> ModelEnumerator::next() {
  if (done_) return std::nullopt;
  const auto n = static_cast<Eigen::Index>(space_.states);
  RationalMatrix p(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = compositions_[rows_[i]];
    for (Eigen::Index j = 0; j < n; ++j) p(i, j) = Rational(row[j], space_.denominator);
  }
  std::vector<LabelSet> labels(space_.states);
  const std::size_t k = space_.atoms.size();
  for (std::size_t s = 0; s < space_.states; ++s) {
    for (std::size_t a = 0; a < k; ++a) {
      // Most significant bit is (state 0, atom 0).
      const std::size_t bit = space_.states * k - 1 - (s * k + a);
      if ((labeling_ >> bit) & 1u) labels[s].insert(space_.atoms[a]);
    }
  }
  Dtmc m(std::move(p), std::move(labels));
  done_ = !advance();
  return m;
}

std::optional<Dtmc> brute_force_bsat(const Formula& f, const EnumSpace& space) {
  const Formula g = normalize(f);
  ModelEnumerator models(space);
  while (auto m = models.next()) {
    if (check(*m, g)) return m;
  }
  return std::nullopt;
}

std::optional<Dtmc> brute_force_bsat(const Formula& f, std::size_t states,
                                     std::uint32_t denominator) {
  return brute_force_bsat(f, EnumSpace{states, denominator, atoms(normalize(f))});
}

EnumerationSummary count_models(const Formula& f, const EnumSpace& space) {
  const Formula g = normalize(f);
  ModelEnumerator models(space);
  EnumerationSummary summary;
  summary.space_size = models.size();
  while (auto m = models.next()) {
    if (!check(*m, g)) continue;
    ++summary.satisfying;
    if (!summary.first_witness) summary.first_witness = std::move(m);
  }
  return summary;
}

}  // namespace pctl
