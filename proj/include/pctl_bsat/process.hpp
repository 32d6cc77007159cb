#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pctl {

/// The executable could not be started at all.
class SpawnError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProcessResult {
  std::string out;
  std::string err;
  std::optional<int> exit_code;    ///< set when the child exited normally
  std::optional<int> term_signal;  ///< set when it died from a signal
  bool timed_out = false;
  std::chrono::duration<double> elapsed{};
};

/// Splits a command template into argv. Whitespace separates words; single
/// and double quotes group, backslash escapes the next character.
std::vector<std::string> split_command(std::string_view command);

/// Runs argv with stdin redirected from `stdin_path` (or /dev/null when
/// empty). The child gets its own process group, which is killed with
/// SIGKILL once `timeout` elapses.
ProcessResult run_process(const std::vector<std::string>& argv, const std::string& stdin_path,
                          std::chrono::duration<double> timeout);

/// Temporary file removed on destruction.
class TempFile {
 public:
  TempFile(std::string_view contents, std::string_view suffix);
  ~TempFile();
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace pctl
