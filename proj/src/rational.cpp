#include "crown/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace crown {
namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) {
    throw std::invalid_argument("malformed integer: '" + std::string(s) + "'");
  }
  std::string text(s[0] == '+' ? s.substr(1) : s);
  return Integer(text, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    std::string digits;
    if (whole.empty() || whole == "-" || whole == "+") {
      digits = "0";
    } else {
      digits = std::string(whole);
    }
    if (frac.empty() || !is_integer_literal(frac) || frac[0] == '-' || frac[0] == '+') {
      throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
    }
    Integer int_part = parse_integer(digits);
    Integer frac_part = parse_integer(frac);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer magnitude = abs(int_part) * scale + frac_part;
    Rational r(negative ? Integer(-magnitude) : magnitude, scale);
    r.canonicalize();
    return r;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Integer floor(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Rational round_to_grid(const Rational& value, long denominator) {
  Rational scaled = value * denominator + Rational(1, 2);
  Rational r(floor(scaled), denominator);
  r.canonicalize();
  return r;
}

Integer round_sqrt(const Rational& value) {
  if (value < 0) throw std::invalid_argument("round_sqrt of a negative value");
  Integer base = floor(value);
  Integer r;
  mpz_sqrt(r.get_mpz_t(), base.get_mpz_t());
  // r = floor(sqrt(value)); round up when (r + 1/2)^2 <= value.
  Rational half_up = Rational(2 * r + 1, 2);
  if (half_up * half_up <= value) r += 1;
  return r;
}

}  // namespace crown
