#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace x0n::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
};

/// Inclusive level range parsed from "A..B" (or a single "N").
struct LevelRange {
  std::int64_t first = 1;
  std::int64_t last = 0;

  bool empty() const { return first > last; }
};

/// Throws std::invalid_argument on malformed input.
LevelRange parse_range(const std::string& text);

enum class Format { text, json };

struct RunConfig {
  std::string command;
  std::optional<std::int64_t> level;
  std::optional<LevelRange> range;
  int weight = 12;
  std::optional<std::int64_t> prec;
  long bound = 3;
  std::size_t max_hits = 0;
  unsigned jobs = 1;
  std::int64_t n_max = 7;
  std::string form = "delta";
  std::string out;
  Format format = Format::text;
};

/// Entry point shared by the executable and the tests. Results go to `out`,
/// progress and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_invariants(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_cusps(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_modpoly(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_model(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_series(const RunConfig& cfg, std::ostream& out, std::ostream& err);

struct LevelCheck {
  std::string name;
  bool passed;
};

/// The arithmetic identity suite for one level (no series work).
std::vector<LevelCheck> verify_level(std::int64_t n);

}  // namespace x0n::cli
