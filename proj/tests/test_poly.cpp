#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "sqmult/poly.hpp"

using namespace sqmult;

namespace {

const Poly f2 = Poly::atom(2), f3 = Poly::atom(3), f5 = Poly::atom(5), f9 = Poly::atom(9);

Poly random_poly(std::mt19937_64& rng, int terms = 4) {
  static const AtomId atoms[] = {2, 3, 5, 9, 11};
  std::uniform_int_distribution<int> coef(-6, 6), pick(0, 4), exp(0, 2), count(1, terms);
  Poly p;
  for (int i = count(rng); i > 0; --i) {
    std::vector<Monomial::Factor> factors;
    for (int j = 0; j < 2; ++j) factors.emplace_back(atoms[pick(rng)], exp(rng));
    p += Poly::term(coef(rng), Monomial::from_factors(factors));
  }
  return p;
}

std::map<AtomId, Rational> random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-30, 30), den(1, 9);
  std::map<AtomId, Rational> point;
  for (AtomId a : {2u, 3u, 5u, 9u, 11u}) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    point[a] = r;
  }
  return point;
}

}  // namespace

TEST_CASE("atom names") {
  CHECK(atom_name(17) == "f17");
  CHECK(parse_atom("f17") == 17);
  CHECK_THROWS_AS(parse_atom("g17"), std::invalid_argument);
  CHECK_THROWS_AS(parse_atom("f"), std::invalid_argument);
  CHECK_THROWS_AS(parse_atom("f1x"), std::invalid_argument);
}

TEST_CASE("monomials") {
  auto m = Monomial::from_factors({{5, 1}, {2, 1}, {2, 1}, {3, 0}});
  CHECK(m.to_string() == "f5*f2^2");
  CHECK(m.degree() == 3);
  CHECK(m.degree_in(2) == 2);
  CHECK(m.degree_in(3) == 0);
  CHECK(Monomial(2).divides(m));
  CHECK_FALSE(Monomial(3).divides(m));
  CHECK(Monomial(2).quotient_of(m) == Monomial::from_factors({{5, 1}, {2, 1}}));
  CHECK(m.without(2) == Monomial(5));
  CHECK(Monomial::gcd(m, Monomial::from_factors({{2, 3}, {7, 1}})) == Monomial(2, 2));
  CHECK(Monomial().to_string() == "1");
}

TEST_CASE("term order: larger atoms dominate") {
  MonomialOrder less;
  CHECK(less(Monomial(2, 5), Monomial(3)));
  CHECK(less(Monomial(3), Monomial::from_factors({{3, 1}, {2, 1}})));
  CHECK(less(Monomial(), Monomial(2)));
  CHECK_FALSE(less(Monomial(5), Monomial(5)));
  Poly p = f2 * f2 + f5 + 3;
  CHECK(p.leading_term().first == Monomial(5));
  CHECK(p.to_string() == "f5 + f2^2 + 3");
}

TEST_CASE("canonical form") {
  CHECK((f2 - f2).is_zero());
  CHECK((f5 * f2 - 2 * f5).to_string() == "f5*f2 - 2*f5");
  CHECK((f2 * Rational(1, 2) - 1).to_string() == "1/2*f2 - 1");
  CHECK(Poly(Rational(-3, 4)).to_string() == "-3/4");
  CHECK(Poly().to_string() == "0");
  CHECK(Poly(7).is_constant());
  CHECK(Poly(7).constant_value() == 7);
  CHECK_FALSE(f2.is_constant());
  CHECK((f3 * f3 * f2).is_monomial());
  CHECK((f3 * f9 + f2).atoms() == std::set<AtomId>{2, 3, 9});
}

TEST_CASE("degrees and coefficients") {
  Poly p = f5 * f2 * f2 + 3 * f5 - f2 + 1;
  CHECK(p.degree_in(2) == 2);
  CHECK(p.degree_in(5) == 1);
  CHECK(p.total_degree() == 3);
  CHECK(p.coefficient_of(5, 1) == f2 * f2 + 3);
  CHECK(p.coefficient_of(5, 0) == 1 - f2);
  CHECK(p.coefficient_of(2, 2) == f5);
  CHECK(p.coefficient_of(9, 1).is_zero());
}

TEST_CASE("substitution and evaluation") {
  Poly p = f5 * f2 - 2 * f5;
  CHECK(p.substitute(2, Poly(2)).is_zero());
  CHECK(p.substitute({{5, 2 * f3 - 1}}) == 2 * f3 * f2 - f2 - 4 * f3 + 2);
  CHECK(p.evaluate({{2, 3}, {5, 7}}) == 7);
  CHECK_THROWS_AS(p.evaluate({{2, 3}}), std::invalid_argument);
  CHECK(f2.pow(3) == f2 * f2 * f2);
  CHECK(f2.pow(0) == 1);
}

TEST_CASE("content and exact division") {
  Poly p = f9 * f3 * f2 - 2 * f3 * f3 * f2;
  CHECK(p.monomial_content() == Monomial::from_factors({{3, 1}, {2, 1}}));
  CHECK(p.divide_by_monomial(p.monomial_content()) == f9 - 2 * f3);
  CHECK(Poly(5).monomial_content().is_one());

  Poly fact = 2 * f3 - 1;
  Poly q = fact * (f3 - 3);
  auto quotient = q.divide_exact(fact);
  REQUIRE(quotient);
  CHECK(*quotient == f3 - 3);
  CHECK_FALSE(q.divide_exact(f3 + 1));
  CHECK_THROWS_AS(f2.divide_exact(Poly()), std::invalid_argument);
  CHECK(Poly().divide_exact(f2) == Poly());

  CHECK((4 * f5 - 2).monic() == f5 - Rational(1, 2));
  CHECK(Poly().monic().is_zero());
}

TEST_CASE("ring laws hold pointwise on random polynomials") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    Poly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    auto x = random_point(rng);
    CHECK((a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x));
    CHECK((a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    Poly sub = a.substitute({{3, b}});
    auto y = x;
    y[3] = b.evaluate(x);
    CHECK(sub.evaluate(x) == a.evaluate(y));
  }
}

TEST_CASE("exact division inverts multiplication") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    Poly a = random_poly(rng), b = random_poly(rng);
    if (b.is_zero()) continue;
    auto quotient = (a * b).divide_exact(b);
    REQUIRE(quotient);
    CHECK(*quotient == a);
    // Leading terms multiply, which division depends on.
    if (!a.is_zero())
      CHECK((a * b).leading_term().first == a.leading_term().first * b.leading_term().first);
  }
}
