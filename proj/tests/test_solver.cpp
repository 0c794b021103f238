#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "sqmult/multfn.hpp"
#include "sqmult/solver.hpp"

using namespace sqmult;
using namespace sqmult::solver;

namespace {

const Poly f2 = Poly::atom(2), f3 = Poly::atom(3), f5 = Poly::atom(5), f8 = Poly::atom(8),
           f9 = Poly::atom(9), f11 = Poly::atom(11), f17 = Poly::atom(17), f29 = Poly::atom(29);

bool contains(const std::vector<Constraint>& cs, const Poly& p) {
  return std::any_of(cs.begin(), cs.end(), [&](const Constraint& c) { return c.poly == p || c.poly == -p; });
}

Knowledge settle(Knowledge k) {
  auto out = propagate(std::move(k));
  REQUIRE(std::holds_alternative<Knowledge>(out));
  return std::get<Knowledge>(std::move(out));
}

const CaseTree& tree100() {
  static const CaseTree tree = classify(100);
  return tree;
}

Rational random_nonzero(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-40, 40), den(1, 15);
  int p = 0;
  while (p == 0) p = num(rng);
  Rational r(p, den(rng));
  r.canonicalize();
  return r;
}

std::vector<std::string> table_strings(const SolutionFamily& fam) {
  std::vector<std::string> out;
  for (const auto& p : fam.table) out.push_back(p.to_string());
  return out;
}

}  // namespace

TEST_CASE("raw values expand through multiplicativity") {
  CHECK(raw_value(1) == 1);
  CHECK(raw_value(8) == f8);
  CHECK(raw_value(10) == f2 * f5);
  CHECK(raw_value(90) == f2 * f9 * f5);
}

TEST_CASE("generate_constraints") {
  CHECK(contains(generate_constraints(4), Poly::atom(4) - 2 * f2));
  CHECK(contains(generate_constraints(10), f2 * f5 - f2 - f8));
  const auto at34 = generate_constraints(34);
  CHECK(contains(at34, f2 * f17 - f5 - f29));
  for (std::size_t i = 0; i < at34.size(); ++i) {
    CHECK(at34[i].id == i);
    if (i > 0) CHECK(at34[i - 1].origin.n <= at34[i].origin.n);
  }
  // One equation instance per four-split, one multiplicativity instance per coprime pair.
  std::size_t equations = 0, pairs = 0;
  for (const auto& c : at34) (c.origin.kind == Origin::Kind::equation ? equations : pairs)++;
  std::size_t splits = 0, coprime = 0;
  for (std::uint64_t n = 1; n <= 34; ++n) splits += repr::four_splits(n).size();
  for (std::uint64_t m = 2; m <= 34; ++m)
    for (std::uint64_t m2 = m + 1; m * m2 <= 34; ++m2) coprime += std::gcd(m, m2) == 1;
  CHECK(equations == splits);
  CHECK(pairs == coprime);
}

TEST_CASE("constraint origins render the identities") {
  for (const auto& c : generate_constraints(10)) {
    if (c.origin.kind == Origin::Kind::equation && c.origin.n == 10 && c.origin.first == 2)
      CHECK(c.origin.identity() == "f(2)·f(5) = f(2) + f(8)");
    if (c.origin.kind == Origin::Kind::equation && c.origin.n == 10 && c.origin.first == 5)
      CHECK(c.origin.shorthand() == "xz = 2z");
  }
}

TEST_CASE("propagate: z != 0 gives x = 2") {
  auto root = settle(Knowledge::initial(10));
  auto [zero, nonzero] = branch(root, 5);
  auto k = settle(nonzero);
  CHECK(k.value_of(2) == 2);
  CHECK(k.value_of(8) == 2 * f5 - 2);
}

TEST_CASE("propagate: z != 0 then y = 3 and z = 5") {
  auto k = settle(branch(settle(Knowledge::initial(15)), 5).second);
  CHECK(k.value_of(2) == 2);
  CHECK(k.value_of(3) == 3);
  CHECK(k.value_of(5) == 5);
}

TEST_CASE("propagate: z = 0 forces x = 0") {
  auto k = settle(branch(settle(Knowledge::initial(100)), 5).first);
  CHECK(k.value_of(2).is_zero());
  bool refuted = false;
  for (const auto& s : k.ledger().steps)
    if (s.rule == Rule::refute_nonzero && s.atom == AtomId{2}) refuted = !s.sub_steps.empty();
  CHECK(refuted);
}

TEST_CASE("propagate reports contradictions as values") {
  // x = 0 with z != 0 breaks xz = 2z.
  auto k = settle(branch(settle(Knowledge::initial(15)), 5).second);
  CHECK_THROWS_AS(branch(k, 3), std::invalid_argument);
  auto fresh = settle(Knowledge::initial(15));
  auto [z0, z_nonzero] = branch(fresh, 5);
  auto [x0, x_nonzero] = branch(z_nonzero, 2);
  auto out = propagate(x0);
  REQUIRE(std::holds_alternative<Contradiction>(out));
  const auto& c = std::get<Contradiction>(out);
  CHECK_FALSE(c.reason.empty());
  CHECK(c.state.ledger().steps.back().rule == Rule::contradiction);
}

TEST_CASE("branch rejects decided pivots") {
  auto root = settle(Knowledge::initial(20));
  auto [zero, nonzero] = branch(root, 5);
  CHECK_THROWS_AS(branch(zero, 5), std::invalid_argument);
  CHECK_THROWS_AS(branch(nonzero, 5), std::invalid_argument);
  CHECK(zero.value_of(5).is_zero());
  CHECK(nonzero.nonzero().count(5) == 1);
  CHECK(zero.ledger().steps.size() == root.ledger().steps.size() + 1);
}

TEST_CASE("classify at 100: the documented leaves") {
  const auto& tree = tree100();
  CHECK(tree.root->kind == CaseNode::Kind::branch);
  CHECK(tree.root->pivot == 5);

  const CaseNode* identity = tree.find({{5, true}});
  REQUIRE(identity);
  REQUIRE(identity->family);
  CHECK(identity->family->free_atoms.empty());
  for (std::uint64_t n = 1; n <= 100; ++n) CHECK(identity->family->table[n] == Poly(Rational(n)));

  const CaseNode* f3f9 = tree.find({{5, false}, {3, true}});
  REQUIRE(f3f9);
  REQUIRE(f3f9->family);
  CHECK(f3f9->family->free_atoms == std::set<AtomId>{3, 9});
  for (std::uint64_t n = 2; n <= 100; ++n) {
    if (n == 3) CHECK(f3f9->family->table[n] == f3);
    else if (n == 9) CHECK(f3f9->family->table[n] == f9);
    else CHECK(f3f9->family->table[n].is_zero());
  }

  const CaseNode* only11 = tree.find({{5, false}, {3, false}, {11, true}});
  REQUIRE(only11);
  REQUIRE(only11->family);
  CHECK(only11->family->free_atoms == std::set<AtomId>{11});
  CHECK(only11->family->table[3].is_zero());
  CHECK(only11->family->table[9].is_zero());
  CHECK(only11->family->table[11] == f11);

  for (const auto& leaf : tree.leaves()) CHECK(leaf.node->kind == CaseNode::Kind::family);
}

TEST_CASE("zero branch derivations") {
  const auto& tree = tree100();
  const CaseNode* z0 = tree.find({{5, false}});
  REQUIRE(z0);
  REQUIRE(z0->state);
  for (std::uint64_t n : {2, 17, 19, 25}) CHECK(z0->state->value_of(n).is_zero());
  bool f3f11 = false;
  for (const auto& [id, p] : z0->state->reduced_pending()) f3f11 |= p.monic() == f11 * f3;
  CHECK(f3f11);

  const CaseNode* f3zero = tree.find({{5, false}, {3, false}});
  REQUIRE(f3zero);
  REQUIRE(f3zero->state);
  bool n99 = false;
  for (const auto& [id, p] : f3zero->state->reduced_pending())
    if (f3zero->state->pending().at(id).origin.n == 99) n99 |= p.monic() == f11 * f9;
  CHECK(n99);
}

TEST_CASE("exception witnesses") {
  const auto& state = *tree100().find({{5, true}})->state;
  auto w29 = exception_witness(29, state);
  CHECK(w29.identity() == "f(2)·f(17) = f(5) + f(29)");
  CHECK(exception_witness(41, state).identity() == "f(3)·f(17) = f(10) + f(41)");
  CHECK(exception_witness(32, state).identity() == "f(8)·f(5) = f(8) + f(32)");
  CHECK(exception_witness(24, state).identity() == "f(24) = f(3)·f(8)");
  CHECK(exception_witness(56, state).identity() == "f(56) = f(7)·f(8)");
  CHECK(exception_witness(8, state).identity() == "f(2)·f(5) = f(2) + f(8)");
  CHECK(exception_witness(96, state).identity() == "f(96) = f(3)·f(32)");
  for (std::uint64_t n : {8, 14, 24, 29, 32, 41, 56, 96}) CHECK(exception_witness(n, state).holds());
  for (std::uint64_t n : {1, 2, 3, 5, 9, 11, 17}) CHECK_THROWS_AS(exception_witness(n, state), std::invalid_argument);
  for (std::uint64_t n : {4, 10, 33, 50}) CHECK_THROWS_AS(exception_witness(n, state), std::invalid_argument);
}

TEST_CASE("replay") {
  SUBCASE("empty ledger") {
    DerivationLedger empty;
    empty.bound = 0;
    auto k = replay(empty);
    CHECK(k.value_of(1) == 1);
    CHECK(k.resolved().empty());
  }
  SUBCASE("z != 0 pins f(n) = n for n <= 21 once n = 22 is in range") {
    auto tree = classify(22);
    const CaseNode* leaf = tree.find({{5, true}});
    REQUIRE(leaf);
    auto k = replay(leaf->state->ledger());
    for (std::uint64_t n = 1; n <= 21; ++n) CHECK(k.value_of(n) == Poly(Rational(n)));
  }
  SUBCASE("z != 0 at bound 21 leaves f11, f17, f19 open") {
    // 11 occurs in no constraint with n <= 21.
    auto tree = classify(21);
    const CaseNode* leaf = tree.find({{5, true}});
    REQUIRE(leaf);
    auto k = replay(leaf->state->ledger());
    CHECK(k.value_of(11) == f11);
    CHECK(k.value_of(17) == f17);
    CHECK(k.value_of(19) == f17 + 2);
    for (std::uint64_t n : {2, 3, 5, 7, 9, 10, 13, 15, 20, 21}) CHECK(k.value_of(n) == Poly(Rational(n)));
  }
  SUBCASE("z = 0 at bound 100") {
    auto k = replay(tree100().find({{5, false}})->state->ledger());
    for (std::uint64_t n : {17, 19, 25}) CHECK(k.value_of(n).is_zero());
  }
  SUBCASE("every leaf replays to the same state") {
    for (const auto& leaf : tree100().leaves()) {
      REQUIRE(leaf.node->state);
      auto k = replay(leaf.node->state->ledger());
      CHECK(k.same_state(*leaf.node->state));
      for (std::uint64_t n = 1; n <= 100; ++n) CHECK(k.value_of(n) == leaf.node->family->table[n]);
    }
  }
  SUBCASE("tampered ledger is rejected at the divergent step") {
    auto ledger = tree100().find({{5, true}})->state->ledger();
    std::size_t index = 0;
    for (; index < ledger.steps.size(); ++index)
      if (ledger.steps[index].rule == Rule::resolve) break;
    REQUIRE(index < ledger.steps.size());
    ledger.steps[index].value = ledger.steps[index].value + 1;
    try {
      replay(ledger);
      FAIL("replay accepted a tampered ledger");
    } catch (const ReplayError& e) {
      CHECK(e.step_index == index);
    }
  }
}

TEST_CASE("soundness: instantiated leaves satisfy the equation") {
  std::mt19937_64 rng(2024);
  const auto& tree = tree100();
  for (const auto& leaf : tree.leaves()) {
    const auto& fam = *leaf.node->family;
    for (int draw = 0; draw < 10; ++draw) {
      std::map<AtomId, Rational> point;
      for (AtomId a : fam.free_atoms) point[a] = random_nonzero(rng);
      bool admissible = true;
      for (const auto& r : fam.residual_constraints) admissible &= r.evaluate(point) == 0;
      if (!admissible) continue;
      auto table = fam.instantiate(point);
      CHECK(multfn::check_functional_equation(table, tree.bound).empty());
      CHECK(multfn::check_multiplicativity(table).empty());
    }
  }
}

TEST_CASE("branch partition: each concrete solution follows exactly one path") {
  std::mt19937_64 rng(5);
  const auto& tree = tree100();
  using multfn::FamilyTag;
  for (auto tag : {FamilyTag::identity, FamilyTag::zero, FamilyTag::case3, FamilyTag::case4,
                   FamilyTag::case5}) {
    multfn::FamilySpec spec{tag, random_nonzero(rng), random_nonzero(rng), random_nonzero(rng)};
    if (tag == FamilyTag::case4) spec.y = 0;
    auto concrete = multfn::make_family(spec, 100).table(100);
    int consistent = 0;
    for (const auto& leaf : tree.leaves()) {
      bool ok = true;
      for (const auto& [pivot, nonzero] : leaf.path) ok &= (concrete[pivot] != 0) == nonzero;
      if (!ok) continue;
      std::map<AtomId, Rational> point;
      for (AtomId a : leaf.node->family->free_atoms) point[a] = concrete[a];
      consistent += leaf.node->family->instantiate(point) == concrete;
    }
    CHECK_MESSAGE(consistent == 1, multfn::to_string(tag));
  }
}

TEST_CASE("confluence under shuffled processing order") {
  const auto& reference = tree100();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ClassifyOptions opts;
    opts.propagation.shuffle_seed = seed;
    auto tree = classify(100, opts);
    auto a = reference.leaves(), b = tree.leaves();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].path == b[i].path);
      CHECK(table_strings(*a[i].node->family) == table_strings(*b[i].node->family));
    }
  }
}

TEST_CASE("classify guards") {
  CHECK_THROWS_AS(classify(3), std::invalid_argument);
  ClassifyOptions shallow;
  shallow.depth_limit = 1;
  auto tree = classify(100, shallow);
  bool incomplete = false;
  for (const auto& leaf : tree.leaves()) incomplete |= leaf.node->kind == CaseNode::Kind::incomplete;
  CHECK(incomplete);
}
