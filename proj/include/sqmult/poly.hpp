#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sqmult/rational.hpp"

namespace sqmult {

/// An unknown value f(n); the id is n itself (always a prime power here).
using AtomId = std::uint32_t;

/// Canonical name "f<n>".
std::string atom_name(AtomId atom);

/// Parses "f<n>"; throws std::invalid_argument otherwise.
AtomId parse_atom(const std::string& name);

/// Product of atom powers, kept sorted by atom id with positive exponents.
class Monomial {
 public:
  using Factor = std::pair<AtomId, unsigned>;

  Monomial() = default;
  explicit Monomial(AtomId atom, unsigned exponent = 1);
  /// Factors may be unsorted and repeated; zero exponents are dropped.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned degree() const;
  unsigned degree_in(AtomId atom) const;

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires divides(other). Returns other / *this.
  Monomial quotient_of(const Monomial& other) const;
  Monomial without(AtomId atom) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Lexicographic term order with larger atom ids more significant. Compatible
/// with multiplication, which exact division relies on.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients. Canonical:
/// no zero coefficients, terms ordered by MonomialOrder.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialOrder>;

  Poly() = default;
  Poly(const Rational& constant);  // NOLINT: implicit on purpose, constants are polys
  Poly(long constant) : Poly(Rational(constant)) {}
  Poly(int constant) : Poly(Rational(constant)) {}
  static Poly atom(AtomId atom);
  static Poly term(const Rational& coefficient, const Monomial& monomial);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Requires is_constant().
  Rational constant_value() const;
  bool is_monomial() const { return terms_.size() == 1; }
  /// Largest term under MonomialOrder; requires !is_zero().
  const std::pair<const Monomial, Rational>& leading_term() const { return *terms_.rbegin(); }

  std::set<AtomId> atoms() const;
  unsigned degree_in(AtomId atom) const;
  unsigned total_degree() const;
  /// Coefficient of atom^power viewed as a polynomial in the remaining atoms.
  Poly coefficient_of(AtomId atom, unsigned power) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& scalar);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly pow(unsigned exponent) const;

  /// Replaces every atom present in `values` by its polynomial.
  Poly substitute(const std::map<AtomId, Poly>& values) const;
  Poly substitute(AtomId atom, const Poly& value) const;
  Rational evaluate(const std::map<AtomId, Rational>& point) const;

  /// Greatest common monomial factor of all terms (1 for the zero poly).
  Monomial monomial_content() const;
  /// Requires content.divides(every term).
  Poly divide_by_monomial(const Monomial& content) const;
  /// Exact quotient, or nullopt when divisor does not divide *this.
  std::optional<Poly> divide_exact(const Poly& divisor) const;

  /// Scaled so the leading coefficient is 1; zero stays zero.
  Poly monic() const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Monomial& m);
std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace sqmult
