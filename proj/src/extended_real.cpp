#include "majo/extended_real.hpp"

#include "majo/error.hpp"

namespace majo {

const Rational& ExtendedReal::value() const {
  if (!value_) throw Error(ErrorCode::InfiniteArithmetic, "value of +inf requested");
  return *value_;
}

ExtendedReal ExtendedReal::operator+(const ExtendedReal& other) const {
  if (is_infinite() || other.is_infinite()) return infinity();
  return ExtendedReal(Rational(*value_ + *other.value_));
}

ExtendedReal ExtendedReal::operator-(const ExtendedReal& other) const {
  if (other.is_infinite()) throw Error(ErrorCode::InfiniteArithmetic, "subtracting +inf");
  if (is_infinite()) return infinity();
  return ExtendedReal(Rational(*value_ - *other.value_));
}

bool ExtendedReal::operator==(const ExtendedReal& other) const { return value_ == other.value_; }

std::strong_ordering ExtendedReal::operator<=>(const ExtendedReal& other) const {
  if (is_infinite()) return other.is_infinite() ? std::strong_ordering::equal : std::strong_ordering::greater;
  if (other.is_infinite()) return std::strong_ordering::less;
  if (*value_ < *other.value_) return std::strong_ordering::less;
  if (*value_ > *other.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ExtendedReal::str() const { return value_ ? to_string(*value_) : std::string("inf"); }

ExtendedReal parse_extended(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return ExtendedReal::infinity();
  return ExtendedReal(parse_rational(text));
}

}  // namespace majo
