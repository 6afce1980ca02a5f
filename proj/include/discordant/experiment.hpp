#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace discordant {

/// Malformed JSON. Line and column are 1-based.
class SpecParseError : public std::runtime_error {
 public:
  SpecParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line(line), column(column) {}
  std::size_t line, column;
};

/// Every schema violation found, each prefixed with its JSON pointer path.
class SpecValidationError : public std::runtime_error {
 public:
  explicit SpecValidationError(std::vector<std::string> v);
  std::vector<std::string> violations;
};

struct ExperimentSpec {
  std::string command;
  nlohmann::json params;
  std::string output;  // file path prefix; artifacts are <output>.csv / <output>.json
};

inline const std::vector<std::string> kCommands = {"density", "detect", "witness", "sl2",
                                                   "symbolic", "rotate", "ena", "ie"};

/// Parses and validates. A missing output becomes "out/<command>-<UTC timestamp>".
ExperimentSpec parse_spec(const std::string& text,
                          std::chrono::system_clock::time_point now = std::chrono::system_clock::now());

struct RunOptions {
  unsigned threads = 0;
  /// Directory that relative output prefixes are resolved against.
  std::optional<std::string> out_dir;
};

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitAcceptance = 2 };

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::string> artifacts;
  std::vector<std::string> messages;
};

/// Dispatches to the modules and writes the artifacts. Never throws for
/// module or IO errors; they become exit code 1 with a message.
RunResult run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

/// Floats use 9 significant digits.
std::string format_real(double v);

}  // namespace discordant
