#include "sqmult/ledger.hpp"

#include <array>
#include <utility>

#include "sqmult/multfn.hpp"

namespace sqmult::solver {

namespace {

std::string product_of_parts(std::uint64_t n) {
  if (n == 1) return "1";
  std::string out;
  for (std::uint64_t q : multfn::prime_power_parts(n)) {
    if (!out.empty()) out += "·";
    out += "f(" + std::to_string(q) + ")";
  }
  return out;
}

}  // namespace

std::string Origin::identity() const {
  if (kind == Kind::equation)
    return product_of_parts(n) + " = " + product_of_parts(first) + " + " + product_of_parts(second);
  return "f(" + std::to_string(n) + ") = f(" + std::to_string(first) + ")·f(" +
         std::to_string(second) + ")";
}

std::string Origin::shorthand() const {
  if (kind != Kind::equation) return {};
  static const std::array<std::pair<std::array<std::uint64_t, 2>, const char*>, 7> known{{
      {{4, 2}, "f(4) = 2x"},
      {{7, 2}, "f(7) = x + z"},
      {{10, 5}, "xz = 2z"},
      {{10, 2}, "xz = x + f(8)"},
      {{12, 2}, "y·2x = x + xz"},
      {{15, 5}, "yz = z(1 + x)"},
      {{21, 8}, "y·f(7) = f(8) + f(13)"},
  }};
  for (const auto& [key, text] : known)
    if (key[0] == n && key[1] == first) return text;
  return {};
}

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::retire: return "retire";
    case Rule::resolve: return "resolve";
    case Rule::cancel: return "cancel";
    case Rule::zero_product: return "zero_product";
    case Rule::contradiction: return "contradiction";
    case Rule::refute_nonzero: return "refute_nonzero";
    case Rule::assume_nonzero: return "assume_nonzero";
    case Rule::branch_zero: return "branch_zero";
    case Rule::branch_nonzero: return "branch_nonzero";
  }
  return "unknown";
}

std::optional<Rule> rule_from_string(const std::string& text) {
  for (auto rule : {Rule::retire, Rule::resolve, Rule::cancel, Rule::zero_product,
                    Rule::contradiction, Rule::refute_nonzero, Rule::assume_nonzero,
                    Rule::branch_zero, Rule::branch_nonzero})
    if (to_string(rule) == text) return rule;
  return std::nullopt;
}

std::string Step::describe() const {
  std::string from;
  if (origin) {
    from = " [from " + origin->identity();
    if (auto sh = origin->shorthand(); !sh.empty()) from += "; " + sh;
    from += "]";
  }
  const std::string name = atom ? atom_name(*atom) : std::string("?");
  switch (rule) {
    case Rule::retire: return "retire #" + std::to_string(constraint.value_or(0)) + " (0 = 0)" + from;
    case Rule::resolve: return "R2 " + name + " = " + value.to_string() + from;
    case Rule::cancel:
      return "R3 cancel nonzero " + factor.to_string() + ": " + value.to_string() + " = 0" + from;
    case Rule::zero_product: return "R4 " + name + " = 0" + from;
    case Rule::contradiction:
      return "R5 contradiction: " + reason + from;
    case Rule::refute_nonzero:
      return "refute " + name + " != 0 (" + reason + ", " + std::to_string(sub_steps.size()) +
             " probe steps), so " + name + " = 0";
    case Rule::assume_nonzero: return "assume " + name + " != 0";
    case Rule::branch_zero: return "case " + name + " = 0";
    case Rule::branch_nonzero: return "case " + name + " != 0";
  }
  return {};
}

std::string DerivationLedger::render() const {
  std::string out = "derivation at bound " + std::to_string(bound) + "\n";
  for (std::size_t i = 0; i < steps.size(); ++i)
    out += std::to_string(i) + ": " + steps[i].describe() + "\n";
  return out;
}

}  // namespace sqmult::solver
