#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqmult/poly.hpp"

namespace sqmult::solver {

/// Where a constraint came from; enough to regenerate it from scratch.
struct Origin {
  enum class Kind { equation, multiplicativity };

  Kind kind = Kind::equation;
  std::uint64_t n = 0;
  std::uint64_t first = 0;   // s for an equation instance, m for a coprime pair
  std::uint64_t second = 0;  // t, or m'

  /// The identity the constraint asserts, written over prime-power values,
  /// e.g. "f(2)·f(5) = f(2) + f(8)" for n = 10 split (2, 8).
  std::string identity() const;
  /// Short x/y/z form (x = f(2), y = f(3), z = f(5)) for the handful of
  /// instances that drive the opening case analysis; empty otherwise.
  std::string shorthand() const;

  friend bool operator==(const Origin&, const Origin&) = default;
};

enum class Rule {
  retire,          // constraint reduced to 0 = 0
  resolve,         // R2: linear in one atom with constant coefficient
  cancel,          // R3: divide out a factor known to be nonzero
  zero_product,    // R4: every other factor nonzero, so the remaining atom is 0
  contradiction,   // R5
  refute_nonzero,  // assuming atom != 0 propagates to a contradiction, so atom = 0
  assume_nonzero,  // hypothesis opened by a refutation probe
  branch_zero,
  branch_nonzero,
};

std::string to_string(Rule rule);
std::optional<Rule> rule_from_string(const std::string& text);

/// One deduction. Fields unused by a rule stay empty.
struct Step {
  Rule rule = Rule::retire;
  std::optional<std::size_t> constraint;  // constraint id
  std::optional<Origin> origin;
  std::optional<AtomId> atom;
  Poly factor;  // cancel: the divisor
  Poly value;   // resolve: the atom's value; cancel: the quotient
  std::string reason;
  std::vector<Step> sub_steps;  // refute_nonzero: the failed probe

  /// One-line human rendering, citing the identity behind the constraint.
  std::string describe() const;
};

/// Ordered, replayable record of a derivation at a fixed constraint bound.
struct DerivationLedger {
  std::uint64_t bound = 0;
  std::vector<Step> steps;

  std::string render() const;
};

}  // namespace sqmult::solver
