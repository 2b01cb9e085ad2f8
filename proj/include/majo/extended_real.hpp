#pragma once

#include <compare>
#include <optional>
#include <string>

#include "majo/rational.hpp"

namespace majo {

/// A rational number or +infinity. Measures of whole spaces and values of the
/// distribution function live here.
class ExtendedReal {
 public:
  ExtendedReal() : value_(Rational(0)) {}
  ExtendedReal(const Rational& value) : value_(value) {}  // NOLINT: implicit by intent
  ExtendedReal(long value) : value_(Rational(value)) {}   // NOLINT

  static ExtendedReal infinity() {
    ExtendedReal r;
    r.value_.reset();
    return r;
  }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  /// Throws Error(InfiniteArithmetic) when infinite.
  const Rational& value() const;

  ExtendedReal operator+(const ExtendedReal& other) const;
  /// inf - inf and finite - inf are errors.
  ExtendedReal operator-(const ExtendedReal& other) const;

  bool operator==(const ExtendedReal& other) const;
  std::strong_ordering operator<=>(const ExtendedReal& other) const;

  std::string str() const;

 private:
  std::optional<Rational> value_;
};

/// Parses a rational or the literal `inf`.
ExtendedReal parse_extended(std::string_view text);

}  // namespace majo
