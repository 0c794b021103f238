#include "sqmult/solver.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "sqmult/multfn.hpp"
#include "sqmult/repr.hpp"

namespace sqmult::solver {

Poly raw_value(std::uint64_t n) {
  Poly value(1);
  for (std::uint64_t q : multfn::prime_power_parts(n)) value = value * Poly::atom(static_cast<AtomId>(q));
  return value;
}

std::vector<Constraint> generate_constraints(std::uint64_t bound) {
  std::vector<Constraint> out;
  const repr::SquareSums sums(bound);
  for (std::uint64_t n = 2; n <= bound; ++n) {
    const Poly lhs = raw_value(n);
    for (const auto& split : sums.four_splits(n)) {
      Poly poly = lhs - raw_value(split.s) - raw_value(split.t);
      out.push_back({out.size(), std::move(poly), {Origin::Kind::equation, n, split.s, split.t}});
    }
    for (std::uint64_t m = 2; m * m < n; ++m) {
      if (n % m != 0 || std::gcd(m, n / m) != 1) continue;
      Poly poly = lhs - raw_value(m) * raw_value(n / m);
      out.push_back({out.size(), std::move(poly), {Origin::Kind::multiplicativity, n, m, n / m}});
    }
  }
  return out;
}

// ---------------------------------------------------------------- Knowledge

Knowledge::Knowledge(std::uint64_t bound) { ledger_.bound = bound; }

Knowledge Knowledge::initial(std::uint64_t bound) {
  Knowledge k(bound);
  for (auto& c : generate_constraints(bound)) {
    for (AtomId a : c.poly.atoms()) k.atoms_.insert(a);
    // Atoms of identically-zero constraints still count as introduced.
    for (std::uint64_t side : {c.origin.n, c.origin.first, c.origin.second})
      for (std::uint64_t q : multfn::prime_power_parts(side)) k.atoms_.insert(static_cast<AtomId>(q));
    k.pending_.emplace(c.id, std::move(c));
  }
  return k;
}

Poly Knowledge::atom_value(AtomId atom) const {
  auto it = resolved_.find(atom);
  return it == resolved_.end() ? Poly::atom(atom) : it->second;
}

Poly Knowledge::value_of(std::uint64_t n) const {
  Poly value(1);
  for (std::uint64_t q : multfn::prime_power_parts(n)) {
    value = value * atom_value(static_cast<AtomId>(q));
    if (value.is_zero()) break;
  }
  return value;
}

bool Knowledge::is_decided(AtomId atom) const {
  return resolved_.count(atom) > 0 || nonzero_.count(atom) > 0 || nonzero_atoms().count(atom) > 0;
}

std::set<AtomId> Knowledge::free_atoms() const {
  std::set<AtomId> out;
  for (AtomId a : atoms_)
    if (!resolved_.count(a)) out.insert(a);
  return out;
}

std::vector<Poly> Knowledge::nonzero_facts() const {
  std::vector<Poly> facts;
  for (AtomId a : nonzero_) facts.push_back(atom_value(a));
  return facts;
}

std::set<AtomId> Knowledge::nonzero_atoms() const {
  std::set<AtomId> out;
  for (const auto& fact : nonzero_facts())
    if (fact.is_monomial())
      for (AtomId a : fact.atoms()) out.insert(a);
  return out;
}

bool Knowledge::provably_nonzero(const Poly& p) const {
  if (p.is_zero()) return false;
  if (p.is_constant()) return true;
  if (p.is_monomial()) {
    auto nz = nonzero_atoms();
    for (AtomId a : p.atoms())
      if (!nz.count(a)) return false;
    return true;
  }
  const Poly target = p.monic();
  for (const auto& fact : nonzero_facts())
    if (fact.monic() == target) return true;
  return false;
}

const Poly& Knowledge::reduce(std::size_t id) {
  auto& c = pending_.at(id);
  bool stale = false;
  for (AtomId a : c.poly.atoms())
    if (resolved_.count(a)) {
      stale = true;
      break;
    }
  if (stale) c.poly = c.poly.substitute(resolved_);
  return c.poly;
}

std::map<std::size_t, Poly> Knowledge::reduced_pending() const {
  std::map<std::size_t, Poly> out;
  for (const auto& [id, c] : pending_) out.emplace(id, c.poly.substitute(resolved_));
  return out;
}

void Knowledge::retire(std::size_t id, Step step) {
  pending_.erase(id);
  record(std::move(step));
}

void Knowledge::rewrite(std::size_t id, Poly poly, Step step) {
  pending_.at(id).poly = std::move(poly);
  record(std::move(step));
}

void Knowledge::resolve(AtomId atom, const Poly& value, std::optional<std::size_t> consumed,
                        Step step) {
  for (auto& [other, expr] : resolved_)
    if (expr.degree_in(atom) > 0) expr = expr.substitute(atom, value);
  resolved_[atom] = value;
  atoms_.insert(atom);
  if (consumed) pending_.erase(*consumed);
  record(std::move(step));
}

void Knowledge::assert_nonzero(AtomId atom, Step step) {
  nonzero_.insert(atom);
  record(std::move(step));
}

std::optional<AtomId> Knowledge::violated_nonzero() const {
  for (AtomId a : nonzero_)
    if (atom_value(a).is_zero()) return a;
  return std::nullopt;
}

bool Knowledge::same_state(const Knowledge& other) const {
  return bound() == other.bound() && resolved_ == other.resolved_ && nonzero_ == other.nonzero_ &&
         reduced_pending() == other.reduced_pending();
}

// ---------------------------------------------------------------- propagation

namespace {

enum class Outcome { unchanged, progressed, contradiction };

Step step_for(Rule rule, const Constraint& c) {
  Step s;
  s.rule = rule;
  s.constraint = c.id;
  s.origin = c.origin;
  return s;
}

struct Propagator {
  Knowledge& state;
  const PropagationOptions& options;
  std::string failure;

  Outcome fail(Step step, std::string reason) {
    step.reason = reason;
    state.record(std::move(step));
    failure = std::move(reason);
    return Outcome::contradiction;
  }

  Outcome check_nonzero_facts() {
    if (auto bad = state.violated_nonzero()) {
      Step s;
      s.rule = Rule::contradiction;
      s.atom = *bad;
      return fail(s, atom_name(*bad) + " is asserted nonzero but resolves to 0");
    }
    return Outcome::unchanged;
  }

  // Divides out every factor known to be nonzero (R3).
  bool cancel(const Constraint& c, Poly& p) {
    bool any = false;
    for (bool again = true; again && !p.is_constant();) {
      again = false;
      const auto nz = state.nonzero_atoms();
      std::vector<Monomial::Factor> known;
      const Monomial content = p.monomial_content();
      for (const auto& f : content.factors())
        if (nz.count(f.first)) known.push_back(f);
      if (!known.empty()) {
        Monomial m = Monomial::from_factors(known);
        p = p.divide_by_monomial(m);
        Step s = step_for(Rule::cancel, c);
        s.factor = Poly::term(1, m);
        s.value = p;
        state.rewrite(c.id, p, std::move(s));
        any = again = true;
        continue;
      }
      for (const auto& fact : state.nonzero_facts()) {
        if (fact.is_constant() || fact.is_monomial()) continue;
        if (auto q = p.divide_exact(fact)) {
          p = std::move(*q);
          Step s = step_for(Rule::cancel, c);
          s.factor = fact;
          s.value = p;
          state.rewrite(c.id, p, std::move(s));
          any = again = true;
          break;
        }
      }
    }
    return any;
  }

  Outcome process(std::size_t id) {
    Poly p = state.reduce(id);
    const Constraint c = state.pending().at(id);
    if (p.is_zero()) {
      state.retire(id, step_for(Rule::retire, c));
      return Outcome::progressed;
    }
    if (p.is_constant())
      return fail(step_for(Rule::contradiction, c), "constraint reduces to " + p.to_string() + " = 0");

    bool progressed = cancel(c, p);
    if (p.is_constant())
      return fail(step_for(Rule::contradiction, c),
                  "after cancelling nonzero factors the constraint reads " + p.to_string() + " = 0");

    // R4: a single undecided atom times something nonzero.
    const Monomial content = p.monomial_content();
    if (content.factors().size() == 1) {
      Poly cofactor = p.divide_by_monomial(content);
      if (state.provably_nonzero(cofactor)) {
        Step s = step_for(Rule::zero_product, c);
        s.atom = content.factors().front().first;
        s.value = Poly();
        state.resolve(*s.atom, Poly(), id, std::move(s));
        return check_nonzero_facts() == Outcome::contradiction ? Outcome::contradiction
                                                                : Outcome::progressed;
      }
    }

    // R2: only the highest atom may be resolved, so every resolved value is a
    // polynomial in smaller atoms.
    std::optional<AtomId> pick;
    if (const AtomId top = *p.atoms().rbegin();
        p.degree_in(top) == 1 && p.coefficient_of(top, 1).is_constant())
      pick = top;
    if (pick) {
      Rational coefficient = p.coefficient_of(*pick, 1).constant_value();
      Poly rest = p - Poly::term(coefficient, Monomial(*pick));
      Poly value = rest * Rational(-1 / coefficient);
      Step s = step_for(Rule::resolve, c);
      s.atom = *pick;
      s.value = value;
      state.resolve(*pick, value, id, std::move(s));
      return check_nonzero_facts() == Outcome::contradiction ? Outcome::contradiction
                                                              : Outcome::progressed;
    }
    return progressed ? Outcome::progressed : Outcome::unchanged;
  }

  // Returns progressed when some atom was proved to be 0.
  Outcome probe() {
    std::set<AtomId> candidates;
    const auto nz = state.nonzero_atoms();
    for (const auto& [id, poly] : state.reduced_pending()) {
      const Monomial content = poly.monomial_content();
      for (const auto& f : content.factors())
        if (!nz.count(f.first) && !state.nonzero().count(f.first)) candidates.insert(f.first);
    }

    PropagationOptions inner = options;
    inner.refutation_probes = false;
    for (AtomId u : candidates) {
      Knowledge trial = state;
      const std::size_t mark = trial.ledger().steps.size();
      Step assume;
      assume.rule = Rule::assume_nonzero;
      assume.atom = u;
      trial.assert_nonzero(u, assume);
      auto result = propagate(std::move(trial), inner);
      if (auto* refuted = std::get_if<Contradiction>(&result)) {
        const auto& steps = refuted->state.ledger().steps;
        Step s;
        s.rule = Rule::refute_nonzero;
        s.atom = u;
        s.value = Poly();
        s.reason = refuted->reason;
        s.sub_steps.assign(steps.begin() + static_cast<std::ptrdiff_t>(mark), steps.end());
        state.resolve(u, Poly(), std::nullopt, std::move(s));
        return check_nonzero_facts() == Outcome::contradiction ? Outcome::contradiction
                                                                : Outcome::progressed;
      }
    }
    return Outcome::unchanged;
  }

  Outcome run() {
    if (check_nonzero_facts() == Outcome::contradiction) return Outcome::contradiction;
    std::mt19937_64 rng(options.shuffle_seed.value_or(0));
    for (;;) {
      bool changed = false;
      std::vector<std::size_t> order;
      order.reserve(state.pending().size());
      for (const auto& entry : state.pending()) order.push_back(entry.first);
      if (options.shuffle_seed) std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t id : order) {
        if (!state.pending().count(id)) continue;
        switch (process(id)) {
          case Outcome::contradiction: return Outcome::contradiction;
          case Outcome::progressed: changed = true; break;
          case Outcome::unchanged: break;
        }
      }
      if (!changed && options.refutation_probes && !state.pending().empty()) {
        switch (probe()) {
          case Outcome::contradiction: return Outcome::contradiction;
          case Outcome::progressed: changed = true; break;
          case Outcome::unchanged: break;
        }
      }
      if (!changed) return Outcome::unchanged;
    }
  }
};

}  // namespace

std::variant<Knowledge, Contradiction> propagate(Knowledge state,
                                                 const PropagationOptions& options) {
  Propagator run{state, options, {}};
  if (run.run() == Outcome::contradiction) {
    std::string reason = std::move(run.failure);
    return Contradiction{std::move(state), std::move(reason)};
  }
  return state;
}

std::pair<Knowledge, Knowledge> branch(const Knowledge& state, AtomId pivot) {
  if (state.resolved().count(pivot))
    throw std::invalid_argument("cannot split on " + atom_name(pivot) + ": already resolved to " +
                                state.resolved().at(pivot).to_string());
  if (state.is_decided(pivot))
    throw std::invalid_argument("cannot split on " + atom_name(pivot) + ": already known nonzero");
  Knowledge zero = state;
  Step z;
  z.rule = Rule::branch_zero;
  z.atom = pivot;
  z.value = Poly();
  zero.resolve(pivot, Poly(), std::nullopt, std::move(z));

  Knowledge nonzero = state;
  Step nz;
  nz.rule = Rule::branch_nonzero;
  nz.atom = pivot;
  nonzero.assert_nonzero(pivot, std::move(nz));
  return {std::move(zero), std::move(nonzero)};
}

// ---------------------------------------------------------------- classify

std::vector<Rational> SolutionFamily::instantiate(const std::map<AtomId, Rational>& point) const {
  std::vector<Rational> out(table.size(), 0);
  for (std::size_t n = 1; n < table.size(); ++n) out[n] = table[n].evaluate(point);
  return out;
}

namespace {

std::optional<AtomId> choose_pivot(const Knowledge& state, const std::vector<AtomId>& order) {
  std::map<AtomId, std::size_t> occurrences;
  for (const auto& [id, poly] : state.reduced_pending())
    for (AtomId a : poly.atoms()) ++occurrences[a];
  for (AtomId a : order)
    if (occurrences.count(a) && !state.is_decided(a)) return a;
  std::optional<AtomId> best;
  for (const auto& [a, count] : occurrences) {
    if (state.is_decided(a)) continue;
    if (!best || count > occurrences[*best]) best = a;
  }
  return best;
}

SolutionFamily family_of(const Knowledge& state) {
  SolutionFamily fam;
  fam.free_atoms = state.free_atoms();
  for (AtomId a : state.nonzero_atoms())
    if (fam.free_atoms.count(a)) fam.nonzero.insert(a);
  for (AtomId a : state.nonzero())
    if (fam.free_atoms.count(a)) fam.nonzero.insert(a);
  fam.table.assign(state.bound() + 1, Poly());
  for (std::uint64_t n = 1; n <= state.bound(); ++n) fam.table[n] = state.value_of(n);
  for (const auto& [id, poly] : state.reduced_pending()) fam.residual_constraints.push_back(poly);
  return fam;
}

std::vector<Step> steps_since(const Knowledge& state, std::size_t mark) {
  const auto& steps = state.ledger().steps;
  return {steps.begin() + static_cast<std::ptrdiff_t>(mark), steps.end()};
}

std::unique_ptr<CaseNode> build(Knowledge state, std::size_t mark, unsigned depth,
                                const ClassifyOptions& options) {
  auto node = std::make_unique<CaseNode>();
  auto result = propagate(std::move(state), options.propagation);
  if (auto* bad = std::get_if<Contradiction>(&result)) {
    node->kind = CaseNode::Kind::contradiction;
    node->reason = bad->reason;
    node->steps = steps_since(bad->state, mark);
    node->state = std::move(bad->state);
    return node;
  }
  auto& k = std::get<Knowledge>(result);
  node->steps = steps_since(k, mark);
  if (k.pending().empty()) {
    node->kind = CaseNode::Kind::family;
    node->family = family_of(k);
    node->state = std::move(k);
    return node;
  }
  if (depth >= options.depth_limit) {
    node->kind = CaseNode::Kind::incomplete;
    node->reason = "depth limit " + std::to_string(options.depth_limit) + " reached with " +
                   std::to_string(k.pending().size()) + " pending constraints";
    node->family = family_of(k);
    node->state = std::move(k);
    return node;
  }
  auto pivot = choose_pivot(k, options.pivot_order);
  if (!pivot) {
    node->kind = CaseNode::Kind::incomplete;
    node->reason = "stuck with " + std::to_string(k.pending().size()) +
                   " pending constraints and no undecided atom to split on";
    node->family = family_of(k);
    node->state = std::move(k);
    return node;
  }
  node->kind = CaseNode::Kind::branch;
  node->pivot = *pivot;
  const std::size_t here = k.ledger().steps.size();
  auto [zero, nonzero] = branch(k, *pivot);
  node->state = std::move(k);
  node->zero_child = build(std::move(zero), here, depth + 1, options);
  node->nonzero_child = build(std::move(nonzero), here, depth + 1, options);
  return node;
}

void collect(const CaseNode* node, std::vector<std::pair<AtomId, bool>>& path,
             std::vector<CaseTree::Leaf>& out) {
  if (node->kind != CaseNode::Kind::branch) {
    out.push_back({node, path});
    return;
  }
  path.emplace_back(node->pivot, false);
  collect(node->zero_child.get(), path, out);
  path.back().second = true;
  collect(node->nonzero_child.get(), path, out);
  path.pop_back();
}

}  // namespace

std::vector<CaseTree::Leaf> CaseTree::leaves() const {
  std::vector<Leaf> out;
  std::vector<std::pair<AtomId, bool>> path;
  if (root) collect(root.get(), path, out);
  return out;
}

const CaseNode* CaseTree::find(const std::vector<std::pair<AtomId, bool>>& path) const {
  const CaseNode* node = root.get();
  for (const auto& [pivot, nonzero] : path) {
    if (!node || node->kind != CaseNode::Kind::branch || node->pivot != pivot) return nullptr;
    node = nonzero ? node->nonzero_child.get() : node->zero_child.get();
  }
  return node;
}

CaseTree classify(std::uint64_t bound, const ClassifyOptions& options) {
  if (bound < 4) throw std::invalid_argument("classify needs bound >= 4");
  CaseTree tree;
  tree.bound = bound;
  tree.root = build(Knowledge::initial(bound), 0, 0, options);
  return tree;
}

// ---------------------------------------------------------------- witnesses

std::string Witness::identity() const {
  const auto side = [](const std::vector<Product>& sum) {
    std::string out;
    for (const auto& product : sum) {
      if (!out.empty()) out += " + ";
      for (std::size_t i = 0; i < product.size(); ++i) {
        if (i > 0) out += "·";
        out += "f(" + std::to_string(product[i]) + ")";
      }
    }
    return out;
  };
  return side(lhs) + " = " + side(rhs);
}

Witness exception_witness(std::uint64_t n, const Knowledge& state) {
  if (n == 0) throw std::invalid_argument("exception_witness needs n >= 1");
  for (std::uint64_t base : {1, 2, 3, 5, 9, 11, 17})
    if (n == base)
      throw std::invalid_argument("f(" + std::to_string(n) +
                                  ") is a base value pinned by direct equation and "
                                  "multiplicativity instances, not by an exception identity");
  if (!repr::four_splits(n).empty())
    throw std::invalid_argument(std::to_string(n) +
                                " is a sum of four nonzero squares; no witness is needed");

  Witness w;
  w.n = n;
  using K = Origin::Kind;
  std::uint64_t residue = n;
  while (residue % 4 == 0) residue /= 4;
  if (n == 29) {
    w.instances = {{K::equation, 34, 5, 29}, {K::multiplicativity, 34, 2, 17}};
    w.lhs = {{2, 17}};
    w.rhs = {{5}, {29}};
  } else if (n == 41) {
    w.instances = {{K::equation, 51, 10, 41}, {K::multiplicativity, 51, 3, 17}};
    w.lhs = {{3, 17}};
    w.rhs = {{10}, {41}};
  } else if (residue == 2) {
    const std::uint64_t previous = n / 4;
    w.instances = {{K::equation, 5 * previous, previous, n},
                   {K::multiplicativity, 5 * previous, previous, 5}};
    w.lhs = {{previous, 5}};
    w.rhs = {{previous}, {n}};
  } else if (residue == 6 || residue == 14) {
    const std::uint64_t odd = residue / 2;
    w.kind = Witness::Kind::multiplicativity;
    w.instances = {{K::multiplicativity, n, odd, n / odd}};
    w.lhs = {{n}};
    w.rhs = {{odd, n / odd}};
  } else {
    throw std::invalid_argument("no witness rule for " + std::to_string(n));
  }
  const auto value = [&](const std::vector<Witness::Product>& sum) {
    Poly total;
    for (const auto& product : sum) {
      Poly term(1);
      for (std::uint64_t arg : product) term = term * state.value_of(arg);
      total += term;
    }
    return total;
  };
  w.lhs_value = value(w.lhs);
  w.rhs_value = value(w.rhs);
  return w;
}

// ---------------------------------------------------------------- replay

ReplayError::ReplayError(std::size_t index, const std::string& what)
    : std::runtime_error("ledger step " + std::to_string(index) + ": " + what), step_index(index) {}

namespace {

struct Replayer {
  Knowledge& k;
  bool contradicted = false;

  [[noreturn]] void diverge(std::size_t index, const std::string& what) {
    throw ReplayError(index, what);
  }

  const Poly& constraint_poly(std::size_t index, const Step& step) {
    if (!step.constraint) diverge(index, to_string(step.rule) + " without a constraint id");
    auto it = k.pending().find(*step.constraint);
    if (it == k.pending().end())
      diverge(index, "constraint #" + std::to_string(*step.constraint) + " is not pending");
    if (step.origin && !(it->second.origin == *step.origin))
      diverge(index, "constraint #" + std::to_string(*step.constraint) + " has origin " +
                         it->second.origin.identity() + ", ledger says " + step.origin->identity());
    return k.reduce(*step.constraint);
  }

  AtomId atom_of(std::size_t index, const Step& step) {
    if (!step.atom) diverge(index, to_string(step.rule) + " without an atom");
    return *step.atom;
  }

  void apply(std::size_t index, const Step& step) {
    if (contradicted) diverge(index, "step after a contradiction");
    switch (step.rule) {
      case Rule::retire: {
        const Poly& p = constraint_poly(index, step);
        if (!p.is_zero()) diverge(index, "retired constraint reduces to " + p.to_string());
        k.retire(*step.constraint, step);
        break;
      }
      case Rule::cancel: {
        Poly p = constraint_poly(index, step);
        if (!k.provably_nonzero(step.factor))
          diverge(index, "cancelled factor " + step.factor.to_string() + " is not known nonzero");
        auto q = p.divide_exact(step.factor);
        if (!q || !(*q == step.value))
          diverge(index, step.factor.to_string() + " does not divide " + p.to_string() +
                             " to give " + step.value.to_string());
        k.rewrite(*step.constraint, *q, step);
        break;
      }
      case Rule::resolve: {
        Poly p = constraint_poly(index, step);
        AtomId u = atom_of(index, step);
        Poly coefficient = p.coefficient_of(u, 1);
        if (p.degree_in(u) != 1 || !coefficient.is_constant())
          diverge(index, p.to_string() + " is not linear in " + atom_name(u) +
                             " with a constant coefficient");
        Rational c = coefficient.constant_value();
        Poly value = (p - Poly::term(c, Monomial(u))) * Rational(-1 / c);
        if (!(value == step.value))
          diverge(index, "derived " + atom_name(u) + " = " + value.to_string() + ", ledger says " +
                             step.value.to_string());
        k.resolve(u, value, *step.constraint, step);
        break;
      }
      case Rule::zero_product: {
        Poly p = constraint_poly(index, step);
        AtomId u = atom_of(index, step);
        Monomial content = p.monomial_content();
        if (content.factors().size() != 1 || content.factors().front().first != u ||
            !k.provably_nonzero(p.divide_by_monomial(content)))
          diverge(index, p.to_string() + " does not force " + atom_name(u) + " = 0");
        k.resolve(u, Poly(), *step.constraint, step);
        break;
      }
      case Rule::contradiction: {
        if (step.constraint) {
          const Poly& p = constraint_poly(index, step);
          if (!p.is_constant() || p.is_zero())
            diverge(index, "claimed contradiction but constraint reads " + p.to_string() + " = 0");
        } else {
          AtomId u = atom_of(index, step);
          if (!k.nonzero().count(u) || !k.atom_value(u).is_zero())
            diverge(index, "claimed " + atom_name(u) + " nonzero and zero, state disagrees");
        }
        k.record(step);
        contradicted = true;
        break;
      }
      case Rule::assume_nonzero:
      case Rule::branch_nonzero: {
        AtomId u = atom_of(index, step);
        if (k.is_decided(u)) diverge(index, atom_name(u) + " is already decided");
        k.assert_nonzero(u, step);
        break;
      }
      case Rule::branch_zero: {
        AtomId u = atom_of(index, step);
        if (k.is_decided(u)) diverge(index, atom_name(u) + " is already decided");
        k.resolve(u, Poly(), std::nullopt, step);
        break;
      }
      case Rule::refute_nonzero: {
        AtomId u = atom_of(index, step);
        if (step.sub_steps.empty() || step.sub_steps.front().rule != Rule::assume_nonzero ||
            step.sub_steps.front().atom != u)
          diverge(index, "refutation of " + atom_name(u) + " does not open with its hypothesis");
        Knowledge trial = k;
        Replayer inner{trial};
        for (std::size_t i = 0; i < step.sub_steps.size(); ++i) {
          try {
            inner.apply(i, step.sub_steps[i]);
          } catch (const ReplayError& e) {
            diverge(index, std::string("inside refutation: ") + e.what());
          }
        }
        if (!inner.contradicted) diverge(index, "refutation of " + atom_name(u) + " never fails");
        k.resolve(u, Poly(), std::nullopt, step);
        break;
      }
    }
  }
};

}  // namespace

Knowledge replay(const DerivationLedger& ledger) {
  Knowledge k = ledger.bound >= 4 ? Knowledge::initial(ledger.bound) : Knowledge(ledger.bound);
  Replayer r{k};
  for (std::size_t i = 0; i < ledger.steps.size(); ++i) r.apply(i, ledger.steps[i]);
  return k;
}

}  // namespace sqmult::solver
