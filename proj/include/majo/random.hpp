#pragma once

#include <cstdint>
#include <random>

#include "majo/operators.hpp"
#include "majo/step_function.hpp"

namespace majo::random {

/// Every randomized suite draws from this engine; a seed fixes the stream.
using Engine = std::mt19937_64;

/// p/q with 0 <= p <= max_num, 1 <= q <= max_den.
Rational nonnegative_rational(Engine& rng, int max_num = 12, int max_den = 6);

/// Positive p/q, 1 <= p <= max_num.
Rational positive_rational(Engine& rng, int max_num = 6, int max_den = 4);

struct StepShape {
  int max_pieces = 5;
  bool infinite = false;
  /// Finite spaces only: allow negative values.
  bool allow_negative = false;
};

/// Random canonical step function. On a finite space the total is the sum of
/// the drawn masses.
StepFunction step_function(Engine& rng, const StepShape& shape);

/// Random step function on a finite space of the given total measure.
StepFunction step_function_with_total(Engine& rng, const Rational& total, int max_pieces = 5,
                                      bool allow_negative = false);

/// Convex combination of random permutation matrices with rational weights.
OperatorMatrix doubly_stochastic(Engine& rng, std::size_t n, int terms = 3);

/// rows x cols with rows >= cols: a doubly stochastic rows x rows matrix with
/// rows - cols columns removed. Columns sum to 1, rows to at most 1.
OperatorMatrix semi_doubly_stochastic(Engine& rng, std::size_t rows, std::size_t cols);

/// Every column an independent random probability vector.
OperatorMatrix markov(Engine& rng, std::size_t rows, std::size_t cols);

std::vector<Rational> vector(Engine& rng, std::size_t n, bool allow_negative);

}  // namespace majo::random
