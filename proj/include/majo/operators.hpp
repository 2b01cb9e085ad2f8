#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "majo/extended_real.hpp"
#include "majo/step_function.hpp"

namespace majo {

/// Ordered family of disjoint atoms of positive finite measure covering the
/// space. An infinite space is covered by the explicit atoms followed by an
/// unbounded run of equal-mass tail atoms on which every integrable step
/// function of interest vanishes.
class Partition {
 public:
  Partition() = default;

  /// Errors: NegativeMass for a mass <= 0.
  explicit Partition(std::vector<Rational> masses);

  /// `tail_count` extra atoms of `tail_mass`; nullopt means unboundedly many,
  /// which makes the total measure infinite.
  /// Errors: NegativeMass; TailMassInfimumZero for an unbounded tail whose
  /// atom mass is not positive.
  Partition(std::vector<Rational> masses, const Rational& tail_mass,
            std::optional<std::size_t> tail_count);

  static Partition equal(std::size_t count, const Rational& mass);

  /// Explicit atoms, including any finite tail run.
  const std::vector<Rational>& masses() const { return masses_; }
  std::size_t size() const { return masses_.size(); }
  const Rational& mass(std::size_t i) const { return masses_.at(i); }

  bool has_unbounded_tail() const { return tail_mass_.has_value(); }
  const std::optional<Rational>& tail_mass() const { return tail_mass_; }

  ExtendedReal total_measure() const;

  /// Infimum of all atom masses, tail included.
  Rational infimum_mass() const;

  bool equal_masses() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<Rational> masses_;
  std::optional<Rational> tail_mass_;
};

/// Dense nonnegative rational matrix, row-major. Rectangular shapes are
/// allowed so that mass-preserving truncations of shifts can be represented.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  OperatorMatrix(std::size_t rows, std::size_t cols);
  /// Errors: DimensionMismatch when entries.size() != rows * cols.
  OperatorMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static OperatorMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const std::vector<Rational>& entries() const { return entries_; }

  std::vector<Rational> row_sums() const;
  std::vector<Rational> column_sums() const;

  /// Errors: DimensionMismatch.
  OperatorMatrix operator*(const OperatorMatrix& rhs) const;

  bool operator==(const OperatorMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Most specific class in the chain DS within SDS within Markov.
enum class OperatorClass { None, Markov, SemiDoublyStochastic, DoublyStochastic };

std::string_view to_string(OperatorClass c);

/// True when `actual` is at least as specific as `required`.
bool at_least(OperatorClass actual, OperatorClass required);

/// Step function together with its alignment: `values[n]` is the value on
/// atom n of `partition`. Unbounded tail atoms carry the value 0.
struct AlignedFunction {
  Partition partition;
  std::vector<Rational> values;

  /// Errors: DimensionMismatch; NegativeValueOnInfiniteSpace.
  AlignedFunction(Partition p, std::vector<Rational> v);

  StepFunction to_step_function() const;
  bool operator==(const AlignedFunction&) const = default;
};

/// A step function seen through a coarse partition: for every coarse atom,
/// the (value, mass) pieces of the function inside it. Masses within a cell
/// must add up to the atom's mass.
struct Overlay {
  Partition coarse;
  std::vector<std::vector<Piece>> cells;

  /// Groups consecutive atoms of `fine` into coarse atoms of the given sizes.
  /// Errors: PartitionMisaligned if the group sizes do not cover `fine`.
  static Overlay from_refinement(const AlignedFunction& fine, std::span<const std::size_t> group_sizes);
};

/// Linear operator between step functions aligned with `domain` and
/// `codomain`, stored in the value basis: the value vector v of an aligned
/// input maps to values * v.
struct PartitionOperator {
  Partition domain;
  Partition codomain;
  OperatorMatrix values;
};

/// Piecewise-constant kernel: K(x, y) = values(n, j) for x in row atom n and
/// y in column atom j.
struct StepKernel {
  Partition row_partition;
  Partition col_partition;
  OperatorMatrix values;
};

/// One T-transform: mixes coordinates j < k with weight lambda, i.e. the 2x2
/// block [[lambda, 1 - lambda], [1 - lambda, lambda]] on (j, k).
struct TTransform {
  std::size_t j = 0;
  std::size_t k = 0;
  Rational lambda;
};

struct WitnessChain {
  std::vector<TTransform> steps;
  /// steps.back() * ... * steps.front(); maps source_values to target_values.
  OperatorMatrix product;
  /// Common equal-mass refinement; every atom has the same mass.
  Partition source_partition;
  std::vector<Rational> source_values;  // g, sorted decreasing
  std::vector<Rational> target_values;  // f, sorted decreasing
};

// ---- classification and matrices on sequence spaces ----

/// Markov: every column sums to 1. SDS: additionally every row sum <= 1.
/// DS: every row sum = 1. Errors: NegativeEntry.
OperatorClass classify_matrix(const OperatorMatrix& d);

/// Errors: DimensionMismatch.
std::vector<Rational> apply_matrix(const OperatorMatrix& d, std::span<const Rational> v);

OperatorMatrix t_transform_matrix(std::size_t n, const TTransform& t);

// ---- partition maps ----

/// Per-atom integrals of an aligned function. Errors: PartitionMisaligned.
std::vector<Rational> phi(const Partition& p, const AlignedFunction& f);

/// Value a_n / mass_n on atom n; shorter vectors are zero-padded.
/// Errors: DimensionMismatch when `a` is longer than the partition.
AlignedFunction psi(const Partition& p, std::span<const Rational> a);

/// Conditional expectation onto the atoms of `overlay.coarse`.
/// Errors: PartitionMisaligned when a cell's masses do not match its atom.
AlignedFunction partition_average(const Overlay& overlay);

/// The averaging operator on a fine partition whose consecutive atoms are
/// grouped as given. Doubly stochastic on `fine`.
PartitionOperator averaging_operator(const Partition& fine, std::span<const std::size_t> group_sizes);

/// Psi_codomain * D * Phi_domain in the value basis:
/// M(n, j) = d(n, j) * mass_j(domain) / mass_n(codomain).
/// Errors: NotStochastic (D below SDS); DimensionMismatch.
PartitionOperator lift(const Partition& domain, const Partition& codomain, const OperatorMatrix& d);
PartitionOperator lift(const Partition& p, const OperatorMatrix& d);

/// The same change of basis as lift, for any nonnegative matrix.
/// Errors: DimensionMismatch; NegativeEntry.
PartitionOperator to_value_basis(const Partition& domain, const Partition& codomain,
                                 const OperatorMatrix& d);

/// Phi * S * Psi as a matrix on sequences. Requires equal atom masses.
/// Errors: UnequalMassesUnsupported; NotStochastic; TailMassInfimumZero.
OperatorMatrix restrict(const Partition& p, const PartitionOperator& s);

/// Classification with respect to the partition measures, via the kernel form.
OperatorClass classify(const PartitionOperator& op);

/// Errors: PartitionMisaligned.
AlignedFunction apply(const PartitionOperator& op, const AlignedFunction& f);

// ---- kernels ----

/// K(n, j) = d(n, j) / mass_n(codomain). Errors: NotStochastic (below Markov).
StepKernel matrix_to_kernel(const Partition& domain, const Partition& codomain,
                            const OperatorMatrix& d);
StepKernel matrix_to_kernel(const Partition& p, const OperatorMatrix& d);

/// The kernel of an operator given in the value basis.
StepKernel kernel_of(const PartitionOperator& op);

/// Column functional sum_n K(n, j) mass_n, one entry per column atom.
std::vector<Rational> kernel_column_integrals(const StepKernel& k);
/// Row functional sum_j K(n, j) mass_j, one entry per row atom.
std::vector<Rational> kernel_row_integrals(const StepKernel& k);

OperatorClass kernel_classify(const StepKernel& k);

/// Errors: PartitionMisaligned.
AlignedFunction kernel_apply(const StepKernel& k, const AlignedFunction& g);

// ---- witnesses ----

/// The common equal-mass refinement used for witnesses. Atom mass is the gcd
/// of all piece masses of f and g; the atoms cover the larger of the two
/// supports (the whole space when finite). Infinite spaces get an unbounded
/// tail of the same mass.
Partition equal_mass_refinement(const StepFunction& f, const StepFunction& g);

/// The decreasing rearrangement of f laid onto `p` atom by atom. Every atom
/// must fall inside a single level set. Errors: PartitionMisaligned.
AlignedFunction align_rearranged(const StepFunction& f, const Partition& p);

/// Chain of at most N - 1 T-transforms whose product maps g's value vector to
/// f's on the equal-mass refinement. Errors: NotMajorized.
WitnessChain ds_witness(const StepFunction& f, const StepFunction& g);

/// T-transform chain between two value vectors with target majorized by
/// source. Both are sorted decreasing internally.
/// Errors: NotMajorized, DimensionMismatch.
WitnessChain ds_witness_vectors(std::span<const Rational> target, std::span<const Rational> source);

enum class ApproxMode {
  /// Rational masses: one exact witness.
  Exact,
  /// Treat masses as non-commensurable: successive dyadic binnings.
  Dyadic,
};

struct SdsStep {
  /// Operator on the partition below; acts on `source` aligned to it.
  PartitionOperator op;
  AlignedFunction source;
  AlignedFunction image;
  /// l1_distance(image, target) on the rearranged axis.
  Rational l1_error;
};

/// Operators S_k with S_k f approaching g in L1, for g majorized by f.
///
/// Exact mode returns the single exact witness (error 0). Dyadic mode bins
/// the rearranged axis into 2^k equal cells, k = 1..n_steps, averages f and g
/// on each binning, and connects the averages by an exact witness; the error
/// is the distance from g to its binned average.
/// Errors: NotMajorized.
std::vector<SdsStep> sds_approx_sequence(const StepFunction& f, const StepFunction& g,
                                         std::size_t n_steps, ApproxMode mode = ApproxMode::Exact);

}  // namespace majo
