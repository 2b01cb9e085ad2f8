#pragma once

#include <vector>

#include "majo/rational.hpp"
#include "majo/step_function.hpp"

namespace test {

using majo::ExtendedReal;
using majo::Rational;
using majo::StepFunction;

inline Rational q(long n, long d = 1) { return Rational(n, d); }

inline ExtendedReal inf() { return ExtendedReal::infinity(); }

inline StepFunction sf(std::initializer_list<majo::Piece> pieces, const ExtendedReal& total) {
  return StepFunction::canonicalize(pieces, total);
}

// 3 on [0,1), 1/2 on [1,2), zero beyond; the incomparable pair's first member.
inline StepFunction example_f() { return sf({{q(3), q(1)}, {q(1, 2), q(1)}}, inf()); }
inline StepFunction example_g() { return sf({{q(2), q(2)}}, inf()); }

}  // namespace test

#include <optional>

#include "majo/error.hpp"

namespace test {

template <typename F>
std::optional<majo::ErrorCode> error_of(F&& fn) {
  try {
    fn();
  } catch (const majo::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace test
