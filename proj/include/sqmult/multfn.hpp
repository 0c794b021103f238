#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sqmult/rational.hpp"
#include "sqmult/repr.hpp"

namespace sqmult::multfn {

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  std::uint64_t value = 1;  // prime^exponent
};

/// Prime-power parts of n by trial division, ascending; empty for n <= 1.
std::vector<std::uint64_t> prime_power_parts(std::uint64_t n);

/// Smallest-prime-factor table for 2..bound.
class FactorSieve {
 public:
  explicit FactorSieve(std::uint64_t bound);

  std::uint64_t bound() const { return bound_; }
  std::uint64_t smallest_factor(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const { return n >= 2 && smallest_factor(n) == n; }
  bool is_prime_power(std::uint64_t n) const;

  /// Prime-power parts of n in ascending prime order; empty for n = 1.
  std::vector<PrimePower> factorize(std::uint64_t n) const;

 private:
  std::uint64_t bound_;
  std::vector<std::uint32_t> spf_;
};

/// A multiplicative function known on every n <= bound through its values on
/// prime powers. Prime powers without an entry take the value 0.
class MultFn {
 public:
  using PrimePowerRule = std::function<Rational(const PrimePower&)>;

  explicit MultFn(std::uint64_t bound);
  MultFn(std::uint64_t bound, const PrimePowerRule& rule);

  std::uint64_t bound() const { return sieve_.bound(); }
  const std::map<std::uint64_t, Rational>& prime_power_values() const { return values_; }

  /// Throws std::invalid_argument if q is not a prime power <= bound.
  void set_prime_power(std::uint64_t q, const Rational& value);

  /// Throws std::out_of_range for n outside [1, bound].
  Rational evaluate(std::uint64_t n) const;

  /// table[n] = evaluate(n) for 1 <= n <= limit; table[0] is unused and 0.
  std::vector<Rational> table(std::uint64_t limit) const;

 private:
  FactorSieve sieve_;
  std::map<std::uint64_t, Rational> values_;
};

enum class FamilyTag { identity, zero, case3, case4, case5, case_f3_only };

std::string_view to_string(FamilyTag tag);
std::optional<FamilyTag> family_tag_from_string(std::string_view text);

/// One of the solution families of the functional equation. y = f(3),
/// w = f(9), v = f(11). case_f3_only is experimental: it is tested, never assumed.
struct FamilySpec {
  FamilyTag tag = FamilyTag::identity;
  Rational y = 0;
  Rational w = 0;
  Rational v = 0;

  /// Throws std::invalid_argument naming the violated parameter constraint.
  void validate() const;
};

MultFn make_family(const FamilySpec& spec, std::uint64_t bound);

/// Completely multiplicative n -> n^exponent; a handy counterexample source.
MultFn make_power_function(unsigned exponent, std::uint64_t bound);

struct CoprimePair {
  std::uint64_t m = 0;
  std::uint64_t m_prime = 0;
  friend bool operator==(const CoprimePair&, const CoprimePair&) = default;
};

struct Violation {
  std::uint64_t n = 0;
  std::variant<repr::FourSplit, CoprimePair> split;
  Rational lhs;
  Rational rhs;
};

/// Reports each n <= bound and split (s, t) with f(n) != f(s) + f(t).
/// Work is partitioned over `jobs` threads; the result is sorted by (n, s).
std::vector<Violation> check_functional_equation(const MultFn& f, std::uint64_t bound,
                                                 unsigned jobs = 1);

/// Same check against a flat value table (table[n] for 1 <= n < table.size()).
std::vector<Violation> check_functional_equation(std::span<const Rational> table,
                                                 std::uint64_t bound, unsigned jobs = 1);

/// Reports coprime 2 <= m < m' with m*m' < table.size() and table[m*m'] != table[m]*table[m'].
/// Throws std::invalid_argument unless table[1] == 1.
std::vector<Violation> check_multiplicativity(std::span<const Rational> table);

}  // namespace sqmult::multfn
