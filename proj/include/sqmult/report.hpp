#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqmult/ledger.hpp"
#include "sqmult/multfn.hpp"
#include "sqmult/poly.hpp"
#include "sqmult/solver.hpp"
#include "sqmult/theorem.hpp"

namespace sqmult::cli {

using nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kExitClean = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

enum class Command { dubouis, splits, verify, deduce, check_theorem };
enum class Format { text, json };

std::string to_string(Command command);
std::optional<Command> command_from_string(const std::string& text);

/// Raised for invalid run parameters; maps to exit status 1.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::deduce;
  std::uint64_t bound = 0;  // 0 picks the per-command default
  std::string family = "identity";
  Rational y = 0, w = 0, v = 0;
  unsigned k = 4;
  std::uint64_t limit = 100;
  std::uint64_t n = 0;
  std::vector<AtomId> pivots;  // empty keeps the default order
  unsigned depth_limit = 8;
  unsigned jobs = 1;
  std::uint64_t verify_bound = 2000;  // check-theorem: bound for extra-family verification
  std::optional<std::string> out;
  Format format = Format::text;

  std::uint64_t effective_bound() const;
  /// Throws UsageError naming the violated constraint.
  void validate() const;
  json to_json() const;
};

/// Shared envelope for every command.
struct Report {
  std::string command;
  json config;
  json payload;
  double timing_ms = 0;
  std::string version = kVersion;

  json to_json() const;
  static Report from_json(const json& j);
  friend bool operator==(const Report&, const Report&) = default;
};

struct RunResult {
  Report report;
  int exit_code = kExitClean;
  std::string text;
};

/// Executes a validated config. Throws UsageError for invalid parameters.
RunResult run(const RunConfig& config);

// Serialization used by the reports.
json poly_to_json(const Poly& p);
Poly poly_from_json(const json& j);
json step_to_json(const solver::Step& step);
solver::Step step_from_json(const json& j);
json ledger_to_json(const solver::DerivationLedger& ledger);
solver::DerivationLedger ledger_from_json(const json& j);
json tree_to_json(const solver::CaseTree& tree, bool with_steps = true);
json violation_to_json(const multfn::Violation& v);
json comparison_to_json(const theorem::TheoremComparison& c);

}  // namespace sqmult::cli
