#include "sqmult/poly.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace sqmult {

std::string atom_name(AtomId atom) { return "f" + std::to_string(atom); }

AtomId parse_atom(const std::string& name) {
  if (name.size() < 2 || name[0] != 'f' ||
      !std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument("not an atom name: '" + name + "'");
  return static_cast<AtomId>(std::stoul(name.substr(1)));
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(AtomId atom, unsigned exponent) {
  if (exponent > 0) factors_.emplace_back(atom, exponent);
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (const auto& [atom, e] : factors) {
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == atom)
      m.factors_.back().second += e;
    else
      m.factors_.emplace_back(atom, e);
  }
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

unsigned Monomial::degree_in(AtomId atom) const {
  for (const auto& [a, e] : factors_)
    if (a == atom) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto i = factors_.begin(), j = other.factors_.begin();
  while (i != factors_.end() || j != other.factors_.end()) {
    if (j == other.factors_.end() || (i != factors_.end() && i->first < j->first)) {
      out.factors_.push_back(*i++);
    } else if (i == factors_.end() || j->first < i->first) {
      out.factors_.push_back(*j++);
    } else {
      out.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& [a, e] : factors_)
    if (other.degree_in(a) < e) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  std::vector<Factor> out;
  for (const auto& [a, e] : other.factors_) {
    unsigned mine = degree_in(a);
    if (e > mine) out.emplace_back(a, e - mine);
  }
  Monomial m;
  m.factors_ = std::move(out);
  return m;
}

Monomial Monomial::without(AtomId atom) const {
  Monomial m;
  for (const auto& f : factors_)
    if (f.first != atom) m.factors_.push_back(f);
  return m;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (const auto& [atom, e] : a.factors_) {
    unsigned other = b.degree_in(atom);
    if (other > 0) m.factors_.emplace_back(atom, std::min(e, other));
  }
  return m;
}

std::string Monomial::to_string() const {
  std::string out;
  // Largest atom first, matching the term order.
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    if (!out.empty()) out += '*';
    out += atom_name(it->first);
    if (it->second > 1) out += '^' + std::to_string(it->second);
  }
  return out.empty() ? "1" : out;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto i = fa.rbegin(), j = fb.rbegin();
  for (; i != fa.rend() && j != fb.rend(); ++i, ++j) {
    if (i->first != j->first) return i->first < j->first;
    if (i->second != j->second) return i->second < j->second;
  }
  return i == fa.rend() && j != fb.rend();
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& constant) {
  if (constant != 0) terms_.emplace(Monomial(), constant);
}

Poly Poly::atom(AtomId atom) { return term(1, Monomial(atom)); }

Poly Poly::term(const Rational& coefficient, const Monomial& monomial) {
  Poly p;
  if (coefficient != 0) p.terms_.emplace(monomial, coefficient);
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_value() const {
  if (!is_constant()) throw std::logic_error("constant_value() on non-constant " + to_string());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

std::set<AtomId> Poly::atoms() const {
  std::set<AtomId> out;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) out.insert(f.first);
  return out;
}

unsigned Poly::degree_in(AtomId atom) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(atom));
  return d;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

Poly Poly::coefficient_of(AtomId atom, unsigned power) const {
  Poly out;
  for (const auto& [m, c] : terms_)
    if (m.degree_in(atom) == power) out.add_term(m.without(atom), c);
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, Rational(-c));
  return *this;
}

Poly& Poly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= scalar;
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, Rational(ca * cb));
  return out;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result(1);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Poly Poly::substitute(const std::map<AtomId, Poly>& values) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Poly product(c);
    std::vector<Monomial::Factor> kept;
    for (const auto& [atom, e] : m.factors()) {
      auto it = values.find(atom);
      if (it == values.end())
        kept.emplace_back(atom, e);
      else
        product = product * it->second.pow(e);
      if (product.is_zero()) break;
    }
    if (product.is_zero()) continue;
    out += product * Poly::term(1, Monomial::from_factors(std::move(kept)));
  }
  return out;
}

Poly Poly::substitute(AtomId atom, const Poly& value) const {
  return substitute(std::map<AtomId, Poly>{{atom, value}});
}

Rational Poly::evaluate(const std::map<AtomId, Rational>& point) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (const auto& [atom, e] : m.factors()) {
      auto it = point.find(atom);
      if (it == point.end())
        throw std::invalid_argument("no value for " + atom_name(atom) + " when evaluating " +
                                    to_string());
      for (unsigned i = 0; i < e; ++i) term *= it->second;
    }
    total += term;
  }
  return total;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_.begin()->first;
  for (const auto& [m, c] : terms_) {
    g = Monomial::gcd(g, m);
    if (g.is_one()) break;
  }
  return g;
}

Poly Poly::divide_by_monomial(const Monomial& content) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    if (!content.divides(m))
      throw std::invalid_argument(content.to_string() + " does not divide " + to_string());
    out.terms_.emplace(content.quotient_of(m), c);
  }
  return out;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  Poly remainder = *this;
  Poly quotient;
  const auto& [lead_m, lead_c] = divisor.leading_term();
  while (!remainder.is_zero()) {
    const auto& [rm, rc] = remainder.leading_term();
    if (!lead_m.divides(rm)) return std::nullopt;
    Poly step = Poly::term(Rational(rc / lead_c), lead_m.quotient_of(rm));
    quotient += step;
    remainder -= step * divisor;
  }
  return quotient;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / leading_term().second;
  return *this * inv;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (m.is_one()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += m.to_string();
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Monomial& m) { return os << m.to_string(); }
std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

}  // namespace sqmult
