#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sqmult/multfn.hpp"
#include "sqmult/solver.hpp"

namespace sqmult::theorem {

/// Support shape of one concrete instance drawn from a solution leaf.
enum class Pattern { identity, zero, f3_f9, f9_only, f11_only, f3_only, other };

std::string to_string(Pattern pattern);

/// Theorem family a pattern belongs to; nullopt for f3_only and other.
std::optional<multfn::FamilyTag> theorem_family(Pattern pattern);

struct LeafInstance {
  std::size_t leaf = 0;            // index into CaseTree::leaves()
  std::set<AtomId> zeroed;          // free atoms set to 0; the rest are generic nonzero
  std::set<std::uint64_t> support;  // n >= 2 with f(n) != 0
  Pattern pattern = Pattern::other;
  std::vector<Rational> values;     // the instantiated table
};

struct FamilyMatch {
  multfn::FamilyTag tag;
  std::vector<std::size_t> leaves;
};

/// An instance pattern outside the theorem's list, checked directly.
struct ExtraFinding {
  std::size_t leaf = 0;
  Pattern pattern = Pattern::other;
  std::set<std::uint64_t> support;
  std::optional<multfn::FamilyTag> experimental_family;
  std::uint64_t verify_bound = 0;
  std::size_t equation_violations = 0;
  std::size_t multiplicativity_violations = 0;

  bool passes() const { return equation_violations == 0 && multiplicativity_violations == 0; }
};

struct TheoremComparison {
  std::uint64_t bound = 0;
  std::size_t leaf_count = 0;
  std::size_t family_leaves = 0;
  std::size_t contradiction_leaves = 0;
  std::size_t incomplete_leaves = 0;
  std::vector<FamilyMatch> matches;  // one entry per theorem family, in theorem order
  std::vector<multfn::FamilyTag> misses;
  std::vector<ExtraFinding> extras;
  std::vector<LeafInstance> instances;

  bool reproduces_theorem() const {
    return misses.empty() && incomplete_leaves == 0 && contradiction_leaves == 0;
  }
};

/// Instantiates every family leaf over all zero/nonzero choices of its free
/// atoms, classifies the resulting functions against the theorem's five
/// families, and verifies any extra pattern up to verify_bound.
TheoremComparison compare_with_theorem(const solver::CaseTree& tree,
                                       std::uint64_t verify_bound = 2000,
                                       std::uint64_t seed = 1);

}  // namespace sqmult::theorem
