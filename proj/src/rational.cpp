#include "majo/rational.hpp"

#include <cctype>

#include "majo/error.hpp"

namespace majo {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(whole) + "'");
  }
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
      throw Error(ErrorCode::ParseError, "signed denominator in '" + std::string(text) + "'");
    }
    Integer den = parse_integer(den_text, text);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (!all_digits(frac_part)) {
      throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
    }
    bool negative = !int_part.empty() && int_part.front() == '-';
    std::string digits(int_part);
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.erase(0, 1);
    if (digits.empty()) digits = "0";
    Integer whole = parse_integer(digits, text);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    Integer frac{std::string(frac_part)};
    Rational magnitude = Rational(whole) + Rational(frac, scale);
    return negative ? Rational(-magnitude) : magnitude;
  }

  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& value) { return value.str(); }

Rational rational_gcd(const Rational& a, const Rational& b) {
  // Bring both to the common denominator lcm(da, db); the gcd of the scaled
  // numerators over that denominator is the answer.
  Integer da = denominator(a);
  Integer db = denominator(b);
  Integer l = lcm(da, db);
  Integer na = boost::multiprecision::abs(Integer(numerator(a) * (l / da)));
  Integer nb = boost::multiprecision::abs(Integer(numerator(b) * (l / db)));
  return Rational(gcd(na, nb), l);
}

}  // namespace majo
