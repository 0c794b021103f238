#include "sqmult/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace sqmult {

std::string to_string(const Rational& value) {
  return value.get_str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string digits(s);
  if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
  return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto bad = [&] {
    return std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) throw bad();
    mpz_class d = parse_integer(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(parse_integer(num), d);
    r.canonicalize();
    return r;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    std::string_view whole_digits = whole;
    if (!whole_digits.empty() && (whole_digits.front() == '-' || whole_digits.front() == '+'))
      whole_digits.remove_prefix(1);
    if (frac.empty() || (!whole_digits.empty() && !is_integer_literal(whole_digits)) ||
        !is_integer_literal(frac) || frac.front() == '-' || frac.front() == '+')
      throw bad();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w = whole_digits.empty() ? mpz_class(0) : parse_integer(whole_digits);
    Rational r(w * scale + parse_integer(frac), scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }
  if (!is_integer_literal(text)) throw bad();
  return Rational(parse_integer(text));
}

}  // namespace sqmult
