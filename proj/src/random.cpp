#include "majo/random.hpp"

#include <algorithm>
#include <numeric>

namespace majo::random {

namespace {

int uniform(Engine& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

Rational nonnegative_rational(Engine& rng, int max_num, int max_den) {
  return Rational(Integer(uniform(rng, 0, max_num)), Integer(uniform(rng, 1, max_den)));
}

Rational positive_rational(Engine& rng, int max_num, int max_den) {
  return Rational(Integer(uniform(rng, 1, max_num)), Integer(uniform(rng, 1, max_den)));
}

StepFunction step_function(Engine& rng, const StepShape& shape) {
  int count = uniform(rng, shape.infinite ? 0 : 1, shape.max_pieces);
  std::vector<Piece> pieces;
  Rational total = 0;
  for (int i = 0; i < count; ++i) {
    Rational value = nonnegative_rational(rng);
    if (!shape.infinite && shape.allow_negative && uniform(rng, 0, 2) == 0) value = -value;
    Rational mass = positive_rational(rng);
    total += mass;
    pieces.push_back({value, mass});
  }
  ExtendedReal t = shape.infinite ? ExtendedReal::infinity() : ExtendedReal(total);
  return StepFunction::canonicalize(pieces, t);
}

StepFunction step_function_with_total(Engine& rng, const Rational& total, int max_pieces,
                                      bool allow_negative) {
  // Cut [0, total) at random rational fractions of the total.
  int count = uniform(rng, 1, max_pieces);
  std::vector<Rational> cuts{Rational(0), total};
  for (int i = 1; i < count; ++i) {
    cuts.push_back(total * Rational(Integer(uniform(rng, 1, 11)), Integer(12)));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rational value = nonnegative_rational(rng);
    if (allow_negative && uniform(rng, 0, 2) == 0) value = -value;
    pieces.push_back({value, cuts[i + 1] - cuts[i]});
  }
  return StepFunction::canonicalize(pieces, ExtendedReal(total));
}

OperatorMatrix doubly_stochastic(Engine& rng, std::size_t n, int terms) {
  OperatorMatrix out(n, n);
  std::vector<int> weights;
  for (int t = 0; t < terms; ++t) weights.push_back(uniform(rng, 1, 9));
  int total = std::accumulate(weights.begin(), weights.end(), 0);
  std::vector<std::size_t> perm(n);
  for (int t = 0; t < terms; ++t) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    Rational w(Integer(weights[t]), Integer(total));
    for (std::size_t i = 0; i < n; ++i) out(perm[i], i) += w;
  }
  return out;
}

OperatorMatrix semi_doubly_stochastic(Engine& rng, std::size_t rows, std::size_t cols) {
  OperatorMatrix ds = doubly_stochastic(rng, rows);
  std::vector<std::size_t> keep(rows);
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  std::shuffle(keep.begin(), keep.end(), rng);
  keep.resize(cols);
  std::sort(keep.begin(), keep.end());
  OperatorMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = ds(i, keep[j]);
  return out;
}

OperatorMatrix markov(Engine& rng, std::size_t rows, std::size_t cols) {
  OperatorMatrix out(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<int> w(rows);
    int total = 0;
    for (auto& x : w) {
      x = uniform(rng, 0, 6);
      total += x;
    }
    if (total == 0) {
      w[uniform(rng, 0, static_cast<int>(rows) - 1)] = 1;
      total = 1;
    }
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = Rational(Integer(w[i]), Integer(total));
  }
  return out;
}

std::vector<Rational> vector(Engine& rng, std::size_t n, bool allow_negative) {
  std::vector<Rational> v(n);
  for (auto& x : v) {
    x = nonnegative_rational(rng);
    if (allow_negative && uniform(rng, 0, 1) == 0) x = -x;
  }
  return v;
}

}  // namespace majo::random
