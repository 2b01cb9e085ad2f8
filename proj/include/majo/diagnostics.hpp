#pragma once

#include <span>
#include <vector>

#include "majo/operators.hpp"
#include "majo/step_function.hpp"

namespace majo {

/// sup of the integral of h over sets E with mu(E) <= delta. For nonnegative
/// h the supremum is attained on the top slice of the rearrangement, so this
/// is partial_integral(h, delta).
/// Errors: DeltaOutOfRange unless 0 <= delta <= mu(X); SignednessViolation.
Rational small_set_modulus(const StepFunction& h, const Rational& delta);

/// The certified bound for a family {S f : S semi-doubly stochastic} at
/// truncation level c: hinge_integral(f, c) + c * delta.
Rational equi_bound(const StepFunction& source, const Rational& c, const Rational& delta);

struct EquiIntegrabilityReport {
  Rational delta;
  /// max over the family of small_set_modulus(member, delta).
  Rational modulus;
  /// min over the truncation grid of equi_bound(source, c, delta).
  Rational bound;
  /// Truncation level attaining `bound`.
  Rational best_c;
  std::size_t family_size = 0;
  bool within_bound = false;
};

/// Errors: EmptyFamily; DeltaOutOfRange; SignednessViolation.
/// An empty `c_grid` defaults to 0 and the piece values of `source`; the
/// bound is linear in c between consecutive piece values.
EquiIntegrabilityReport equi_modulus(std::span<const StepFunction> family, const StepFunction& source,
                                     const Rational& delta, std::span<const Rational> c_grid = {});

/// Integral of |f - g| after aligning both rearrangements on [0, mu(X)).
/// Since step functions carry no geometry, this is the distance between the
/// decreasing rearrangements. Errors: MeasureMismatch.
Rational l1_distance(const StepFunction& f, const StepFunction& g);

/// Atomwise distance between two functions on the same partition.
/// Errors: PartitionMisaligned.
Rational l1_distance(const AlignedFunction& f, const AlignedFunction& g);

/// Sum of |v_i|.
Rational l1_norm(std::span<const Rational> v);

}  // namespace majo
