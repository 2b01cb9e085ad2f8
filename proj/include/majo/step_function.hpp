#pragma once

#include <span>
#include <vector>

#include "majo/extended_real.hpp"
#include "majo/rational.hpp"

namespace majo {

/// A level set of a step function: the function equals `value` on a set of
/// measure `mass`.
struct Piece {
  Rational value;
  Rational mass;

  bool operator==(const Piece&) const = default;
};

/// Exact integrable step function on a finite or sigma-finite measure space.
///
/// Only the masses of the level sets are stored, never their geometry. Pieces
/// are kept in canonical form: strictly decreasing values, equal values
/// merged. On an infinite space the function vanishes outside the listed
/// pieces (an implicit zero tail of infinite mass), so zero-valued pieces are
/// dropped and all values must be nonnegative. On a finite space the masses
/// always add up to the total measure.
///
/// Because the pieces are sorted by value, a StepFunction is its own
/// decreasing rearrangement: the k-th piece occupies
/// [m_1 + ... + m_{k-1}, m_1 + ... + m_k) on the rearranged axis.
class StepFunction {
 public:
  /// Builds the canonical form. On a finite space any measure not covered by
  /// `raw` is filled with the value 0.
  ///
  /// Errors: NegativeMass (a mass <= 0), NegativeValueOnInfiniteSpace,
  /// MassExceedsTotal.
  static StepFunction canonicalize(std::span<const Piece> raw, const ExtendedReal& total);
  static StepFunction canonicalize(std::initializer_list<Piece> raw, const ExtendedReal& total) {
    return canonicalize(std::span<const Piece>(raw.begin(), raw.size()), total);
  }

  /// The zero function on a space of the given measure.
  static StepFunction zero(const ExtendedReal& total);

  /// `value` times the indicator of a set of measure `mass`.
  static StepFunction indicator(const Rational& value, const Rational& mass,
                                const ExtendedReal& total);

  const std::vector<Piece>& pieces() const { return pieces_; }
  const ExtendedReal& total_measure() const { return total_; }
  bool nonnegative() const { return nonnegative_; }
  bool has_infinite_tail() const { return total_.is_infinite(); }

  /// Measure of the set of nonzero values.
  Rational support_measure() const;

  /// Positions on the rearranged axis where the decreasing rearrangement
  /// changes value: 0, m_1, m_1 + m_2, ..., and the finite total if any.
  std::vector<Rational> rearranged_breakpoints() const;

  bool operator==(const StepFunction&) const = default;

 private:
  StepFunction(std::vector<Piece> pieces, ExtendedReal total);

  std::vector<Piece> pieces_;
  ExtendedReal total_;
  bool nonnegative_ = true;
};

/// Sum of value * mass over all pieces.
Rational integral(const StepFunction& f);

/// d_f(t) = mu{x : f(x) > t}. Infinite only when t < 0 on an infinite space.
ExtendedReal distribution(const StepFunction& f, const Rational& t);

/// The decreasing rearrangement, as a step function on [0, mu(X)) with the
/// same total measure. Canonical pieces are already in decreasing order, so
/// this is the identity on the stored representation.
StepFunction rearrangement(const StepFunction& f);

/// Integral of the decreasing rearrangement over [0, s].
/// Errors: SOutOfRange unless 0 <= s <= mu(X).
Rational partial_integral(const StepFunction& f, const ExtendedReal& s);

/// Integral of max(f - u, 0). Errors: DivergentHinge when u < 0 on an
/// infinite space.
Rational hinge_integral(const StepFunction& f, const Rational& u);

/// Integral of the distribution function over [u, infinity), summed over the
/// finitely many intervals on which d_f is constant. Equal to
/// hinge_integral(f, u); computed independently of it.
/// Errors: DivergentHinge when u < 0 on an infinite space.
Rational tail_integral(const StepFunction& f, const Rational& u);

/// Largest value taken on a set of positive measure (0 for the zero
/// function on an infinite space).
Rational ess_sup(const StepFunction& f);

/// Smallest value taken on a set of positive measure; 0 whenever an infinite
/// zero tail is present.
Rational ess_inf(const StepFunction& f);

}  // namespace majo
