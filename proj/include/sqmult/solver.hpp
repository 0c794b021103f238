#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sqmult/ledger.hpp"
#include "sqmult/poly.hpp"

namespace sqmult::solver {

/// Asserts poly = 0.
struct Constraint {
  std::size_t id = 0;
  Poly poly;
  Origin origin;
};

/// f(n) as a polynomial in prime-power atoms: the product of f(p^e) over the
/// prime-power parts of n.
Poly raw_value(std::uint64_t n);

/// Equation instances f(n) - f(s) - f(t) for every n <= bound and every
/// four-split, followed per n by multiplicativity instances f(m m') - f(m) f(m').
/// Ids are positions in the returned order, which is ascending in n.
std::vector<Constraint> generate_constraints(std::uint64_t bound);

/// Solver state for one branch of the case analysis.
class Knowledge {
 public:
  explicit Knowledge(std::uint64_t bound = 0);
  /// Fresh state holding every generated constraint as pending.
  static Knowledge initial(std::uint64_t bound);

  std::uint64_t bound() const { return ledger_.bound; }
  const std::map<AtomId, Poly>& resolved() const { return resolved_; }
  const std::set<AtomId>& nonzero() const { return nonzero_; }
  const std::map<std::size_t, Constraint>& pending() const { return pending_; }
  const std::set<AtomId>& atoms() const { return atoms_; }
  const DerivationLedger& ledger() const { return ledger_; }

  /// Current expression for an atom (the atom itself when unresolved).
  Poly atom_value(AtomId atom) const;
  /// Current expression for f(n); 1 for n = 1.
  Poly value_of(std::uint64_t n) const;
  bool is_decided(AtomId atom) const;
  /// Atoms introduced by the constraints and not yet resolved.
  std::set<AtomId> free_atoms() const;

  /// Current values of the nonzero atoms: each of these polynomials is nonzero.
  std::vector<Poly> nonzero_facts() const;
  /// Unresolved atoms that are provably nonzero (they divide a monomial fact).
  std::set<AtomId> nonzero_atoms() const;
  /// Nonzero rational, or a constant multiple of a nonzero fact, or a monomial
  /// over provably nonzero atoms.
  bool provably_nonzero(const Poly& p) const;

  /// Substitutes resolved atoms into the pending constraint and stores it.
  const Poly& reduce(std::size_t id);
  /// Pending constraints with all substitutions applied.
  std::map<std::size_t, Poly> reduced_pending() const;

  // State changes. Each appends `step` to the ledger.
  void retire(std::size_t id, Step step);
  void rewrite(std::size_t id, Poly poly, Step step);
  /// Records atom = value, substitutes it everywhere and consumes the
  /// constraint if one is given.
  void resolve(AtomId atom, const Poly& value, std::optional<std::size_t> consumed, Step step);
  void assert_nonzero(AtomId atom, Step step);
  void record(Step step) { ledger_.steps.push_back(std::move(step)); }

  /// A nonzero atom whose value has become 0, if any.
  std::optional<AtomId> violated_nonzero() const;

  /// Same resolved table, nonzero set and (reduced) pending constraints.
  bool same_state(const Knowledge& other) const;

 private:
  std::map<AtomId, Poly> resolved_;
  std::set<AtomId> nonzero_;
  std::map<std::size_t, Constraint> pending_;
  std::set<AtomId> atoms_;
  DerivationLedger ledger_;
};

struct Contradiction {
  Knowledge state;  // state at the point of failure; its ledger ends in the contradiction step
  std::string reason;
};

struct PropagationOptions {
  /// Try assuming atom != 0 for atoms that factor out of a stuck constraint;
  /// a contradiction proves the atom is 0.
  bool refutation_probes = true;
  /// When set, pending constraints are visited in a seeded random order
  /// instead of ascending id.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Applies the deduction rules to a fixed point.
std::variant<Knowledge, Contradiction> propagate(Knowledge state,
                                                 const PropagationOptions& options = {});

/// Splits on pivot = 0 / pivot != 0. Throws std::invalid_argument when the
/// pivot is already resolved or known nonzero.
std::pair<Knowledge, Knowledge> branch(const Knowledge& state, AtomId pivot);

struct SolutionFamily {
  std::set<AtomId> free_atoms;
  std::set<AtomId> nonzero;  // free atoms asserted nonzero on this branch
  std::vector<Poly> table;   // table[n] for 1 <= n <= bound; table[0] unused
  std::vector<Poly> residual_constraints;

  /// Instantiates the free atoms; missing atoms throw std::invalid_argument.
  std::vector<Rational> instantiate(const std::map<AtomId, Rational>& point) const;
};

struct CaseNode {
  enum class Kind { branch, family, contradiction, incomplete };

  Kind kind = Kind::incomplete;
  std::vector<Step> steps;  // ledger steps added at this node
  AtomId pivot = 0;
  std::unique_ptr<CaseNode> zero_child;
  std::unique_ptr<CaseNode> nonzero_child;
  std::optional<SolutionFamily> family;
  std::string reason;
  std::optional<Knowledge> state;  // state after propagation at this node
};

struct ClassifyOptions {
  std::vector<AtomId> pivot_order = {5, 3, 11, 9};
  unsigned depth_limit = 8;
  PropagationOptions propagation;
};

struct CaseTree {
  std::uint64_t bound = 0;
  std::unique_ptr<CaseNode> root;

  struct Leaf {
    const CaseNode* node;
    std::vector<std::pair<AtomId, bool>> path;  // (pivot, is_nonzero) from the root
  };
  std::vector<Leaf> leaves() const;
  /// Node reached by following (pivot, is_nonzero) decisions, or nullptr.
  const CaseNode* find(const std::vector<std::pair<AtomId, bool>>& path) const;
};

CaseTree classify(std::uint64_t bound, const ClassifyOptions& options = {});

/// The identity that pins f(n) for an n with no four-square representation.
struct Witness {
  enum class Kind { equation, multiplicativity };
  using Product = std::vector<std::uint64_t>;  // f(a)·f(b)·...

  Kind kind = Kind::equation;
  std::uint64_t n = 0;
  std::vector<Origin> instances;
  std::vector<Product> lhs;  // sum of products
  std::vector<Product> rhs;
  Poly lhs_value;  // both sides under the supplied state
  Poly rhs_value;

  std::string identity() const;
  bool holds() const { return lhs_value == rhs_value; }
};

/// Throws std::invalid_argument when n has a four-square representation or is
/// one of the base values 1, 2, 3, 5, 9, 11, 17.
Witness exception_witness(std::uint64_t n, const Knowledge& state);

/// Re-executes every step from the initial state and checks each conclusion.
/// Throws ReplayError naming the first divergent step.
Knowledge replay(const DerivationLedger& ledger);

struct ReplayError : std::runtime_error {
  ReplayError(std::size_t step_index, const std::string& what);
  std::size_t step_index;
};

}  // namespace sqmult::solver
