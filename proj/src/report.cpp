#include "sqmult/report.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include "sqmult/repr.hpp"

namespace sqmult::cli {

std::string to_string(Command command) {
  switch (command) {
    case Command::dubouis: return "dubouis";
    case Command::splits: return "splits";
    case Command::verify: return "verify";
    case Command::deduce: return "deduce";
    case Command::check_theorem: return "check-theorem";
  }
  return "unknown";
}

std::optional<Command> command_from_string(const std::string& text) {
  for (auto c : {Command::dubouis, Command::splits, Command::verify, Command::deduce,
                 Command::check_theorem})
    if (to_string(c) == text) return c;
  return std::nullopt;
}

std::uint64_t RunConfig::effective_bound() const {
  if (bound != 0) return bound;
  switch (command) {
    case Command::verify: return 2000;
    case Command::deduce:
    case Command::check_theorem: return 200;
    default: return 0;
  }
}

void RunConfig::validate() const {
  const std::uint64_t b = effective_bound();
  switch (command) {
    case Command::dubouis:
      if (k < 4) throw UsageError("dubouis needs --k >= 4 (no closed form below 4 squares)");
      if (limit < 1) throw UsageError("dubouis needs --limit >= 1");
      break;
    case Command::splits:
      if (n < 2) throw UsageError("splits needs --n >= 2");
      break;
    case Command::verify: {
      if (b < 4) throw UsageError("verify needs --bound >= 4");
      if (jobs < 1) throw UsageError("--jobs must be >= 1");
      if (family == "square") break;
      auto tag = multfn::family_tag_from_string(family);
      if (!tag) throw UsageError("unknown family '" + family + "'");
      try {
        multfn::FamilySpec{*tag, y, w, v}.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      break;
    }
    case Command::deduce:
    case Command::check_theorem:
      if (b < 4) throw UsageError(to_string(command) + " needs --bound >= 4");
      if (depth_limit < 1) throw UsageError("--depth must be >= 1");
      for (AtomId p : pivots) {
        multfn::FactorSieve sieve(std::max<std::uint64_t>(p, 2));
        if (p < 2 || !sieve.is_prime_power(p))
          throw UsageError("pivot " + atom_name(p) + " is not a prime-power atom");
      }
      break;
  }
}

json RunConfig::to_json() const {
  json j{{"command", to_string(command)},
         {"format", format == Format::json ? "json" : "text"}};
  switch (command) {
    case Command::dubouis:
      j["k"] = k;
      j["limit"] = limit;
      break;
    case Command::splits: j["n"] = n; break;
    case Command::verify:
      j["bound"] = effective_bound();
      j["family"] = family;
      j["y"] = sqmult::to_string(y);
      j["w"] = sqmult::to_string(w);
      j["v"] = sqmult::to_string(v);
      j["jobs"] = jobs;
      break;
    case Command::deduce:
    case Command::check_theorem: {
      j["bound"] = effective_bound();
      json pivots_json = json::array();
      for (AtomId p : pivots.empty() ? solver::ClassifyOptions{}.pivot_order : pivots)
        pivots_json.push_back(atom_name(p));
      j["pivots"] = pivots_json;
      j["depth_limit"] = depth_limit;
      if (command == Command::check_theorem) j["verify_bound"] = verify_bound;
      break;
    }
  }
  if (out) j["out"] = *out;
  return j;
}

json Report::to_json() const {
  return {{"command", command},
          {"config", config},
          {"payload", payload},
          {"timing_ms", timing_ms},
          {"version", version}};
}

Report Report::from_json(const json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.config = j.at("config");
  r.payload = j.at("payload");
  r.timing_ms = j.at("timing_ms").get<double>();
  r.version = j.at("version").get<std::string>();
  return r;
}

// ---------------------------------------------------------------- serialization

json poly_to_json(const Poly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json factors = json::array();
    for (const auto& [atom, e] : m.factors()) factors.push_back({atom, e});
    terms.push_back({sqmult::to_string(c), factors});
  }
  return {{"text", p.to_string()}, {"terms", terms}};
}

Poly poly_from_json(const json& j) {
  Poly p;
  for (const auto& term : j.at("terms")) {
    std::vector<Monomial::Factor> factors;
    for (const auto& f : term.at(1)) factors.emplace_back(f.at(0).get<AtomId>(), f.at(1).get<unsigned>());
    p += Poly::term(parse_rational(term.at(0).get<std::string>()),
                    Monomial::from_factors(std::move(factors)));
  }
  return p;
}

namespace {

json origin_to_json(const solver::Origin& o) {
  json j{{"kind", o.kind == solver::Origin::Kind::equation ? "equation" : "multiplicativity"},
         {"n", o.n},
         {"first", o.first},
         {"second", o.second},
         {"identity", o.identity()}};
  if (auto sh = o.shorthand(); !sh.empty()) j["shorthand"] = sh;
  return j;
}

solver::Origin origin_from_json(const json& j) {
  solver::Origin o;
  o.kind = j.at("kind").get<std::string>() == "equation" ? solver::Origin::Kind::equation
                                                         : solver::Origin::Kind::multiplicativity;
  o.n = j.at("n").get<std::uint64_t>();
  o.first = j.at("first").get<std::uint64_t>();
  o.second = j.at("second").get<std::uint64_t>();
  return o;
}

json atoms_to_json(const std::set<AtomId>& atoms) {
  json j = json::array();
  for (AtomId a : atoms) j.push_back(atom_name(a));
  return j;
}

json path_to_json(const std::vector<std::pair<AtomId, bool>>& path) {
  json j = json::array();
  for (const auto& [pivot, nonzero] : path)
    j.push_back(atom_name(pivot) + (nonzero ? " != 0" : " = 0"));
  return j;
}

std::string kind_name(solver::CaseNode::Kind kind) {
  switch (kind) {
    case solver::CaseNode::Kind::branch: return "branch";
    case solver::CaseNode::Kind::family: return "family";
    case solver::CaseNode::Kind::contradiction: return "contradiction";
    case solver::CaseNode::Kind::incomplete: return "incomplete";
  }
  return "unknown";
}

json node_to_json(const solver::CaseNode& node, bool with_steps) {
  json j{{"kind", kind_name(node.kind)}};
  if (with_steps) {
    json steps = json::array();
    for (const auto& s : node.steps) steps.push_back(step_to_json(s));
    j["steps"] = steps;
  } else {
    j["step_count"] = node.steps.size();
  }
  switch (node.kind) {
    case solver::CaseNode::Kind::branch:
      j["pivot"] = atom_name(node.pivot);
      j["zero"] = node_to_json(*node.zero_child, with_steps);
      j["nonzero"] = node_to_json(*node.nonzero_child, with_steps);
      break;
    case solver::CaseNode::Kind::family:
    case solver::CaseNode::Kind::incomplete: {
      if (!node.family) {
        j["reason"] = node.reason;
        break;
      }
      const auto& fam = *node.family;
      j["free_atoms"] = atoms_to_json(fam.free_atoms);
      j["nonzero"] = atoms_to_json(fam.nonzero);
      json table = json::object();
      for (std::size_t n = 1; n < fam.table.size(); ++n) table[std::to_string(n)] = fam.table[n].to_string();
      j["table"] = table;
      json residual = json::array();
      for (const auto& r : fam.residual_constraints) residual.push_back(r.to_string());
      j["residual_constraints"] = residual;
      if (!node.reason.empty()) j["reason"] = node.reason;
      break;
    }
    case solver::CaseNode::Kind::contradiction: j["reason"] = node.reason; break;
  }
  return j;
}

}  // namespace

json step_to_json(const solver::Step& step) {
  json j{{"rule", solver::to_string(step.rule)}, {"text", step.describe()}};
  if (step.constraint) j["constraint"] = *step.constraint;
  if (step.origin) j["origin"] = origin_to_json(*step.origin);
  if (step.atom) j["atom"] = atom_name(*step.atom);
  if (!step.factor.is_zero()) j["factor"] = poly_to_json(step.factor);
  if (!step.value.is_zero()) j["value"] = poly_to_json(step.value);
  if (!step.reason.empty()) j["reason"] = step.reason;
  if (!step.sub_steps.empty()) {
    json sub = json::array();
    for (const auto& s : step.sub_steps) sub.push_back(step_to_json(s));
    j["sub_steps"] = sub;
  }
  return j;
}

solver::Step step_from_json(const json& j) {
  solver::Step s;
  auto rule = solver::rule_from_string(j.at("rule").get<std::string>());
  if (!rule) throw std::invalid_argument("unknown rule " + j.at("rule").dump());
  s.rule = *rule;
  if (j.contains("constraint")) s.constraint = j.at("constraint").get<std::size_t>();
  if (j.contains("origin")) s.origin = origin_from_json(j.at("origin"));
  if (j.contains("atom")) s.atom = parse_atom(j.at("atom").get<std::string>());
  if (j.contains("factor")) s.factor = poly_from_json(j.at("factor"));
  if (j.contains("value")) s.value = poly_from_json(j.at("value"));
  if (j.contains("reason")) s.reason = j.at("reason").get<std::string>();
  if (j.contains("sub_steps"))
    for (const auto& sub : j.at("sub_steps")) s.sub_steps.push_back(step_from_json(sub));
  return s;
}

json ledger_to_json(const solver::DerivationLedger& ledger) {
  json steps = json::array();
  for (const auto& s : ledger.steps) steps.push_back(step_to_json(s));
  return {{"bound", ledger.bound}, {"steps", steps}};
}

solver::DerivationLedger ledger_from_json(const json& j) {
  solver::DerivationLedger ledger;
  ledger.bound = j.at("bound").get<std::uint64_t>();
  for (const auto& s : j.at("steps")) ledger.steps.push_back(step_from_json(s));
  return ledger;
}

json tree_to_json(const solver::CaseTree& tree, bool with_steps) {
  return {{"bound", tree.bound}, {"root", node_to_json(*tree.root, with_steps)}};
}

json violation_to_json(const multfn::Violation& v) {
  json j{{"n", v.n}, {"lhs", sqmult::to_string(v.lhs)}, {"rhs", sqmult::to_string(v.rhs)}};
  if (const auto* s = std::get_if<repr::FourSplit>(&v.split))
    j["split"] = {s->s, s->t};
  else {
    const auto& p = std::get<multfn::CoprimePair>(v.split);
    j["coprime_pair"] = {p.m, p.m_prime};
  }
  return j;
}

json comparison_to_json(const theorem::TheoremComparison& c) {
  json matches = json::array();
  for (const auto& m : c.matches)
    matches.push_back({{"family", std::string(multfn::to_string(m.tag))}, {"leaves", m.leaves}});
  json misses = json::array();
  for (auto tag : c.misses) misses.push_back(std::string(multfn::to_string(tag)));
  json extras = json::array();
  for (const auto& e : c.extras) {
    json x{{"finding", "extra leaf / extra family"},
           {"leaf", e.leaf},
           {"pattern", theorem::to_string(e.pattern)},
           {"support", e.support},
           {"verify_bound", e.verify_bound},
           {"equation_violations", e.equation_violations},
           {"multiplicativity_violations", e.multiplicativity_violations},
           {"passes_verification", e.passes()}};
    if (e.experimental_family) x["experimental_family"] = std::string(multfn::to_string(*e.experimental_family));
    extras.push_back(x);
  }
  json instances = json::array();
  for (const auto& i : c.instances) {
    json zeroed = json::array();
    for (AtomId a : i.zeroed) zeroed.push_back(atom_name(a));
    instances.push_back({{"leaf", i.leaf},
                         {"zeroed", zeroed},
                         {"support", i.support},
                         {"pattern", theorem::to_string(i.pattern)}});
  }
  return {{"bound", c.bound},
          {"leaf_count", c.leaf_count},
          {"family_leaves", c.family_leaves},
          {"contradiction_leaves", c.contradiction_leaves},
          {"incomplete_leaves", c.incomplete_leaves},
          {"matches", matches},
          {"misses", misses},
          {"extras", extras},
          {"instances", instances},
          {"reproduces_theorem", c.reproduces_theorem()}};
}

// ---------------------------------------------------------------- commands

namespace {

struct Outcome {
  json payload;
  int exit_code = kExitClean;
  std::string text;
};

template <typename Range>
std::string join(const Range& items, const std::string& sep = ", ") {
  std::ostringstream os;
  bool first = true;
  for (const auto& item : items) {
    if (!first) os << sep;
    os << item;
    first = false;
  }
  return os.str();
}

Outcome run_dubouis(const RunConfig& cfg) {
  Outcome o;
  const auto exceptions = repr::exceptions_up_to(cfg.k, cfg.limit);
  const std::uint64_t checked = std::min<std::uint64_t>(cfg.limit, 20000);
  repr::SquareSumOracle oracle(checked, cfg.k);
  std::vector<std::uint64_t> mismatches;
  for (std::uint64_t n = 1; n <= checked; ++n)
    if (repr::dubouis_predict(n, cfg.k) != oracle.representable(n, cfg.k)) mismatches.push_back(n);
  o.payload = {{"k", cfg.k},
               {"limit", cfg.limit},
               {"exceptions", exceptions},
               {"oracle_check", {{"checked_up_to", checked}, {"mismatches", mismatches}}}};
  o.exit_code = mismatches.empty() ? kExitClean : kExitViolation;
  o.text = "not a sum of " + std::to_string(cfg.k) + " nonzero squares, n <= " +
           std::to_string(cfg.limit) + ": " + join(exceptions) + "\n" +
           "exhaustive search agrees up to " + std::to_string(checked) +
           (mismatches.empty() ? "" : " except at " + join(mismatches)) + "\n";
  return o;
}

Outcome run_splits(const RunConfig& cfg) {
  Outcome o;
  json splits = json::array();
  std::ostringstream text;
  const auto all = repr::four_splits(cfg.n);
  text << cfg.n << " has " << all.size() << " split(s) into two sums of two nonzero squares\n";
  for (const auto& s : all) {
    const auto rs = repr::two_square_reps(s.s).front();
    const auto rt = repr::two_square_reps(s.t).front();
    splits.push_back({{"s", s.s}, {"t", s.t}, {"s_pair", {rs.a, rs.b}}, {"t_pair", {rt.a, rt.b}}});
    text << "  " << s.s << " + " << s.t << "  (" << rs.a << "^2+" << rs.b << "^2 + " << rt.a
         << "^2+" << rt.b << "^2)\n";
  }
  o.payload = {{"n", cfg.n}, {"splits", splits}};
  o.text = text.str();
  return o;
}

Outcome run_verify(const RunConfig& cfg) {
  Outcome o;
  const std::uint64_t bound = cfg.effective_bound();
  multfn::MultFn f = cfg.family == "square"
                         ? multfn::make_power_function(2, bound)
                         : multfn::make_family({*multfn::family_tag_from_string(cfg.family), cfg.y,
                                                cfg.w, cfg.v},
                                               bound);
  const auto equation = multfn::check_functional_equation(f, bound, cfg.jobs);
  const auto table = f.table(bound);
  const auto mult = multfn::check_multiplicativity(table);
  constexpr std::size_t kListed = 100;
  json eq = json::array(), mu = json::array();
  for (std::size_t i = 0; i < std::min(kListed, equation.size()); ++i) eq.push_back(violation_to_json(equation[i]));
  for (std::size_t i = 0; i < std::min(kListed, mult.size()); ++i) mu.push_back(violation_to_json(mult[i]));
  o.payload = {{"family", cfg.family},
               {"bound", bound},
               {"equation_violation_count", equation.size()},
               {"multiplicativity_violation_count", mult.size()},
               {"equation_violations", eq},
               {"multiplicativity_violations", mu}};
  o.exit_code = equation.empty() && mult.empty() ? kExitClean : kExitViolation;
  std::ostringstream text;
  text << "family " << cfg.family << " up to " << bound << ": " << equation.size()
       << " equation violation(s), " << mult.size() << " multiplicativity violation(s)\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(5, equation.size()); ++i) {
    const auto& v = equation[i];
    const auto& s = std::get<repr::FourSplit>(v.split);
    text << "  f(" << v.n << ") = " << v.lhs.get_str() << " but f(" << s.s << ") + f(" << s.t
         << ") = " << v.rhs.get_str() << "\n";
  }
  o.text = text.str();
  return o;
}

solver::ClassifyOptions classify_options(const RunConfig& cfg) {
  solver::ClassifyOptions opts;
  if (!cfg.pivots.empty()) opts.pivot_order = cfg.pivots;
  opts.depth_limit = cfg.depth_limit;
  return opts;
}

json leaf_summaries(const solver::CaseTree& tree) {
  json leaves = json::array();
  for (const auto& leaf : tree.leaves()) {
    json l{{"path", path_to_json(leaf.path)}, {"kind", kind_name(leaf.node->kind)}};
    if (leaf.node->family) {
      l["free_atoms"] = atoms_to_json(leaf.node->family->free_atoms);
      l["nonzero"] = atoms_to_json(leaf.node->family->nonzero);
    }
    if (!leaf.node->reason.empty()) l["reason"] = leaf.node->reason;
    leaves.push_back(l);
  }
  return leaves;
}

std::string render_leaves(const solver::CaseTree& tree) {
  std::ostringstream text;
  for (const auto& leaf : tree.leaves()) {
    std::vector<std::string> path;
    for (const auto& [p, nz] : leaf.path) path.push_back(atom_name(p) + (nz ? " != 0" : " = 0"));
    text << "[" << join(path) << "] " << kind_name(leaf.node->kind);
    if (const auto& fam = leaf.node->family) {
      std::vector<std::string> free;
      for (AtomId a : fam->free_atoms) free.push_back(atom_name(a));
      text << ", free {" << join(free) << "}";
      std::vector<std::string> nonzero_values;
      for (std::size_t n = 2; n < fam->table.size(); ++n)
        if (!fam->table[n].is_zero()) nonzero_values.push_back("f(" + std::to_string(n) + ")=" + fam->table[n].to_string());
      if (nonzero_values.size() <= 6) text << ", nonzero values: " << (nonzero_values.empty() ? "none" : join(nonzero_values));
      else text << ", " << nonzero_values.size() << " nonzero values";
    }
    if (!leaf.node->reason.empty()) text << " (" << leaf.node->reason << ")";
    text << "\n";
  }
  return text.str();
}

void render_ledger(const solver::CaseNode& node, const std::string& label, std::ostringstream& text) {
  text << "== " << label << "\n";
  for (const auto& s : node.steps)
    if (s.rule != solver::Rule::retire) text << "  " << s.describe() << "\n";
  if (node.kind == solver::CaseNode::Kind::branch && node.state) {
    // Distinct open constraints up to scaling, each with its first instance.
    std::map<std::string, std::pair<std::size_t, std::size_t>> open;
    for (const auto& [id, poly] : node.state->reduced_pending()) {
      auto [it, fresh] = open.try_emplace(poly.monic().to_string(), id, 0);
      ++it->second.second;
    }
    constexpr std::size_t kShown = 8;
    std::size_t shown = 0;
    for (const auto& [text_form, first] : open) {
      if (shown++ == kShown) {
        text << "  ... " << open.size() - kShown << " more open constraint(s)\n";
        break;
      }
      text << "  open: " << text_form << " = 0 [from "
           << node.state->pending().at(first.first).origin.identity();
      if (first.second > 1) text << ", " << first.second - 1 << " more instance(s)";
      text << "]\n";
    }
  }
  if (node.kind == solver::CaseNode::Kind::branch) {
    render_ledger(*node.zero_child, label + " / " + atom_name(node.pivot) + " = 0", text);
    render_ledger(*node.nonzero_child, label + " / " + atom_name(node.pivot) + " != 0", text);
  }
}

Outcome run_deduce(const RunConfig& cfg) {
  Outcome o;
  const auto tree = solver::classify(cfg.effective_bound(), classify_options(cfg));
  std::size_t incomplete = 0;
  for (const auto& leaf : tree.leaves())
    if (leaf.node->kind == solver::CaseNode::Kind::incomplete) ++incomplete;
  o.payload = {{"tree", tree_to_json(tree)}, {"leaves", leaf_summaries(tree)}};
  o.exit_code = incomplete == 0 ? kExitClean : kExitViolation;
  std::ostringstream text;
  render_ledger(*tree.root, "root", text);
  text << "leaves:\n" << render_leaves(tree);
  o.text = text.str();
  return o;
}

Outcome run_check_theorem(const RunConfig& cfg) {
  Outcome o;
  const auto tree = solver::classify(cfg.effective_bound(), classify_options(cfg));
  const auto cmp = theorem::compare_with_theorem(tree, cfg.verify_bound);
  o.payload = {{"comparison", comparison_to_json(cmp)},
               {"leaves", leaf_summaries(tree)},
               {"tree", tree_to_json(tree, false)}};
  o.exit_code = cmp.reproduces_theorem() ? kExitClean : kExitViolation;
  std::ostringstream text;
  text << render_leaves(tree);
  for (const auto& m : cmp.matches) {
    text << "family " << multfn::to_string(m.tag) << ": ";
    text << (m.leaves.empty() ? std::string("MISSING") : "leaf " + join(m.leaves)) << "\n";
  }
  for (const auto& e : cmp.extras) {
    std::vector<std::string> support;
    for (auto n : e.support) support.push_back(std::to_string(n));
    text << "extra leaf / extra family at leaf " << e.leaf << ": nonzero only at {" << join(support)
         << "}";
    if (e.experimental_family) text << " (" << multfn::to_string(*e.experimental_family) << ")";
    text << ", verification to " << e.verify_bound << ": "
         << (e.passes() ? "passes" : "fails") << " (" << e.equation_violations << " equation, "
         << e.multiplicativity_violations << " multiplicativity violations)\n";
  }
  text << "contradiction leaves: " << cmp.contradiction_leaves
       << ", incomplete leaves: " << cmp.incomplete_leaves << "\n";
  text << (cmp.reproduces_theorem() ? "theorem reproduced\n" : "theorem NOT reproduced\n");
  o.text = text.str();
  return o;
}

}  // namespace

RunResult run(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  switch (config.command) {
    case Command::dubouis: o = run_dubouis(config); break;
    case Command::splits: o = run_splits(config); break;
    case Command::verify: o = run_verify(config); break;
    case Command::deduce: o = run_deduce(config); break;
    case Command::check_theorem: o = run_check_theorem(config); break;
  }
  const auto stop = std::chrono::steady_clock::now();
  RunResult result;
  result.report.command = to_string(config.command);
  result.report.config = config.to_json();
  result.report.payload = std::move(o.payload);
  result.report.timing_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  result.exit_code = o.exit_code;
  result.text = std::move(o.text);
  return result;
}

}  // namespace sqmult::cli
