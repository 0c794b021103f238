#include "sqmult/theorem.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace sqmult::theorem {

using multfn::FamilyTag;

std::string to_string(Pattern pattern) {
  switch (pattern) {
    case Pattern::identity: return "identity";
    case Pattern::zero: return "zero";
    case Pattern::f3_f9: return "f3_f9";
    case Pattern::f9_only: return "f9_only";
    case Pattern::f11_only: return "f11_only";
    case Pattern::f3_only: return "f3_only";
    case Pattern::other: return "other";
  }
  return "other";
}

std::optional<FamilyTag> theorem_family(Pattern pattern) {
  switch (pattern) {
    case Pattern::identity: return FamilyTag::identity;
    case Pattern::zero: return FamilyTag::zero;
    case Pattern::f3_f9: return FamilyTag::case3;
    case Pattern::f9_only: return FamilyTag::case4;
    case Pattern::f11_only: return FamilyTag::case5;
    default: return std::nullopt;
  }
}

namespace {

Rational generic_value(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 97), den(1, 31), sign(0, 1);
  Rational r(num(rng) * (sign(rng) ? 1 : -1), den(rng));
  r.canonicalize();
  return r;
}

Pattern classify_values(const std::vector<Rational>& values, std::set<std::uint64_t>& support) {
  bool identity = true;
  for (std::uint64_t n = 1; n < values.size(); ++n) {
    if (values[n] != Rational(n)) identity = false;
    if (n >= 2 && values[n] != 0) support.insert(n);
  }
  if (identity) return Pattern::identity;
  if (support.empty()) return Pattern::zero;
  if (support == std::set<std::uint64_t>{3, 9}) return Pattern::f3_f9;
  if (support == std::set<std::uint64_t>{9}) return Pattern::f9_only;
  if (support == std::set<std::uint64_t>{11}) return Pattern::f11_only;
  if (support == std::set<std::uint64_t>{3}) return Pattern::f3_only;
  return Pattern::other;
}

}  // namespace

TheoremComparison compare_with_theorem(const solver::CaseTree& tree, std::uint64_t verify_bound,
                                       std::uint64_t seed) {
  TheoremComparison out;
  out.bound = tree.bound;
  for (auto tag : {FamilyTag::identity, FamilyTag::zero, FamilyTag::case3, FamilyTag::case4,
                   FamilyTag::case5})
    out.matches.push_back({tag, {}});

  std::mt19937_64 rng(seed);
  const auto leaves = tree.leaves();
  out.leaf_count = leaves.size();
  for (std::size_t index = 0; index < leaves.size(); ++index) {
    const auto* node = leaves[index].node;
    if (node->kind == solver::CaseNode::Kind::contradiction) {
      ++out.contradiction_leaves;
      continue;
    }
    if (node->kind == solver::CaseNode::Kind::incomplete) {
      ++out.incomplete_leaves;
      continue;
    }
    ++out.family_leaves;
    const auto& fam = *node->family;
    std::vector<AtomId> optional_atoms;
    for (AtomId a : fam.free_atoms)
      if (!fam.nonzero.count(a)) optional_atoms.push_back(a);

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << optional_atoms.size()); ++mask) {
      LeafInstance inst;
      inst.leaf = index;
      std::map<AtomId, Rational> point;
      for (AtomId a : fam.free_atoms) point[a] = generic_value(rng);
      for (std::size_t i = 0; i < optional_atoms.size(); ++i)
        if (mask & (std::uint64_t{1} << i)) {
          point[optional_atoms[i]] = 0;
          inst.zeroed.insert(optional_atoms[i]);
        }
      bool admissible = true;
      for (const auto& residual : fam.residual_constraints)
        if (residual.evaluate(point) != 0) admissible = false;
      if (!admissible) continue;
      inst.values = fam.instantiate(point);
      inst.pattern = classify_values(inst.values, inst.support);

      if (auto tag = theorem_family(inst.pattern)) {
        for (auto& match : out.matches)
          if (match.tag == *tag && (match.leaves.empty() || match.leaves.back() != index))
            match.leaves.push_back(index);
      } else {
        ExtraFinding extra;
        extra.leaf = index;
        extra.pattern = inst.pattern;
        extra.support = inst.support;
        if (inst.pattern == Pattern::f3_only) {
          // Check the experimental family on its own terms, far past the tree bound.
          extra.experimental_family = FamilyTag::case_f3_only;
          extra.verify_bound = std::max(verify_bound, tree.bound);
          auto f = multfn::make_family({FamilyTag::case_f3_only, inst.values[3], 0, 0},
                                       extra.verify_bound);
          auto table = f.table(extra.verify_bound);
          extra.equation_violations =
              multfn::check_functional_equation(std::span<const Rational>(table),
                                                extra.verify_bound)
                  .size();
          extra.multiplicativity_violations = multfn::check_multiplicativity(table).size();
        } else {
          extra.verify_bound = tree.bound;
          extra.equation_violations =
              multfn::check_functional_equation(std::span<const Rational>(inst.values), tree.bound)
                  .size();
          extra.multiplicativity_violations = multfn::check_multiplicativity(inst.values).size();
        }
        out.extras.push_back(std::move(extra));
      }
      out.instances.push_back(std::move(inst));
    }
  }
  for (const auto& match : out.matches)
    if (match.leaves.empty()) out.misses.push_back(match.tag);
  return out;
}

}  // namespace sqmult::theorem
