#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "majo/step_function.hpp"

namespace majo {

enum class Criterion { Rearrangement, TailDistribution, Hinge, ConvexSample, SublinearSample };

std::string_view to_string(Criterion c);

/// Whether the equality-of-integrals clause is part of the question.
enum class Relation { Strong, Weak };

/// One evaluation of both sides of a criterion. `point` is s for the
/// rearrangement criterion, u for the hinge and tail criteria, and the index
/// of the family member for sampled families.
struct CheckPoint {
  ExtendedReal point;
  Rational lhs;
  Rational rhs;
};

enum class FailureKind {
  /// lhs > rhs at the witness point.
  Exceeds,
  /// The totals differ; lhs and rhs are the two integrals.
  IntegralMismatch,
};

struct Certificate {
  FailureKind kind;
  CheckPoint at;
};

/// Decision plus evidence. On success `checked` lists every breakpoint that
/// was evaluated; on failure `witness` holds the first violation found and
/// `checked` the points evaluated before it.
struct MajorizationVerdict {
  bool holds = false;
  Criterion criterion = Criterion::Rearrangement;
  Relation relation = Relation::Strong;
  std::vector<CheckPoint> checked;
  std::optional<Certificate> witness;
};

/// A finite family of test functions for the sampled criteria.
///
/// Hinge: parameters are the thresholds u >= 0, phi(t) = max(t - u, 0).
/// Sublinear: parameters are flattened (alpha, beta) pairs with alpha, beta >= 0,
/// phi(t) = beta * max(t, 0) + alpha * max(-t, 0).
struct TestFunctionFamily {
  enum class Kind { Hinge, Sublinear };
  Kind kind = Kind::Hinge;
  std::vector<Rational> parameters;
};

/// f weakly majorized by g: the partial integrals of f's decreasing
/// rearrangement never exceed those of g. Decided exactly on the union of
/// both functions' rearrangement breakpoints; the difference of the partial
/// integrals is linear between them.
///
/// Errors: MeasureMismatch.
MajorizationVerdict weak_majorize(const StepFunction& f, const StepFunction& g);

/// f majorized by g: weak majorization plus equal integrals.
MajorizationVerdict majorize(const StepFunction& f, const StepFunction& g);

/// Both relations through the hinge functionals u -> integral of (f - u)^+,
/// evaluated at u = 0 and at every positive piece value of f or g.
///
/// Errors: MeasureMismatch; SignednessViolation for negative values.
MajorizationVerdict hinge_criterion(const StepFunction& f, const StepFunction& g,
                                    Relation relation = Relation::Strong);

/// The same decision as hinge_criterion, but with each side computed as the
/// integral of the distribution function over [u, infinity).
MajorizationVerdict tail_distribution_criterion(const StepFunction& f, const StepFunction& g,
                                                Relation relation = Relation::Strong);

MajorizationVerdict rearrangement_criterion(const StepFunction& f, const StepFunction& g,
                                            Relation relation = Relation::Strong);

/// Checks integral phi(f) <= integral phi(g) for each member of `family`.
/// For a hinge family this is a necessary condition for f majorized by g; it
/// becomes sufficient (for the weak relation) once the thresholds include 0
/// and every piece value of f and g. The equality clause is never checked
/// here.
///
/// Errors: EmptyFamily, InvalidFamily, MeasureMismatch.
MajorizationVerdict convex_sample_test(const StepFunction& f, const StepFunction& g,
                                       const TestFunctionFamily& family);

/// Integral of phi(f) for a sublinear phi with slopes alpha (left), beta (right).
Rational sublinear_integral(const StepFunction& f, const Rational& alpha, const Rational& beta);

/// Re-evaluates the certificate of a failed verdict from scratch and reports
/// whether it still demonstrates the failure.
bool certificate_reproduces(const StepFunction& f, const StepFunction& g,
                            const MajorizationVerdict& verdict);

struct CrossCheckReport {
  bool consistent = false;
  bool holds = false;
  std::array<MajorizationVerdict, 3> verdicts;  // rearrangement, hinge, tail
};

/// Runs the rearrangement, hinge and tail-distribution criteria. They are
/// equivalent, so any disagreement is an implementation defect.
CrossCheckReport cross_check(const StepFunction& f, const StepFunction& g,
                             Relation relation = Relation::Strong);

/// cross_check, throwing Error(InternalInconsistency) on disagreement.
CrossCheckReport cross_check_or_throw(const StepFunction& f, const StepFunction& g,
                                      Relation relation = Relation::Strong);

}  // namespace majo
