#include "majo/operators.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "majo/diagnostics.hpp"
#include "majo/error.hpp"
#include "majo/majorization.hpp"

namespace majo {

// ---------------------------------------------------------------- Partition

Partition::Partition(std::vector<Rational> masses) : masses_(std::move(masses)) {
  for (const Rational& m : masses_) {
    if (m <= 0) throw Error(ErrorCode::NegativeMass, "atom mass " + to_string(m) + " is not positive");
  }
}

Partition::Partition(std::vector<Rational> masses, const Rational& tail_mass,
                     std::optional<std::size_t> tail_count)
    : Partition(std::move(masses)) {
  if (tail_count) {
    if (tail_mass <= 0 && *tail_count > 0) {
      throw Error(ErrorCode::NegativeMass, "tail atom mass " + to_string(tail_mass) + " is not positive");
    }
    masses_.insert(masses_.end(), *tail_count, tail_mass);
    return;
  }
  if (tail_mass <= 0) {
    throw Error(ErrorCode::TailMassInfimumZero,
                "unbounded tail with atom mass " + to_string(tail_mass) + " has infimum <= 0");
  }
  tail_mass_ = tail_mass;
}

Partition Partition::equal(std::size_t count, const Rational& mass) {
  return Partition(std::vector<Rational>(count, mass));
}

ExtendedReal Partition::total_measure() const {
  if (tail_mass_) return ExtendedReal::infinity();
  return ExtendedReal(std::accumulate(masses_.begin(), masses_.end(), Rational(0)));
}

Rational Partition::infimum_mass() const {
  Rational inf = tail_mass_ ? *tail_mass_ : Rational(0);
  bool seen = tail_mass_.has_value();
  for (const Rational& m : masses_) {
    if (!seen || m < inf) inf = m;
    seen = true;
  }
  return inf;
}

bool Partition::equal_masses() const {
  std::optional<Rational> ref = tail_mass_;
  for (const Rational& m : masses_) {
    if (!ref) ref = m;
    if (m != *ref) return false;
  }
  return true;
}

// ----------------------------------------------------------- OperatorMatrix

OperatorMatrix::OperatorMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

OperatorMatrix::OperatorMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(entries_.size()) + " entries for a " +
                                                  std::to_string(rows) + "x" + std::to_string(cols) +
                                                  " matrix");
  }
}

OperatorMatrix OperatorMatrix::identity(std::size_t n) {
  OperatorMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Rational> OperatorMatrix::row_sums() const {
  std::vector<Rational> s(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s[i] += (*this)(i, j);
  return s;
}

std::vector<Rational> OperatorMatrix::column_sums() const {
  std::vector<Rational> s(cols_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s[j] += (*this)(i, j);
  return s;
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& rhs) const {
  if (cols_ != rhs.rows_) {
    throw Error(ErrorCode::DimensionMismatch, "cannot multiply " + std::to_string(rows_) + "x" +
                                                  std::to_string(cols_) + " by " +
                                                  std::to_string(rhs.rows_) + "x" +
                                                  std::to_string(rhs.cols_));
  }
  OperatorMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

std::string_view to_string(OperatorClass c) {
  switch (c) {
    case OperatorClass::None: return "none";
    case OperatorClass::Markov: return "markov";
    case OperatorClass::SemiDoublyStochastic: return "semi-doubly-stochastic";
    case OperatorClass::DoublyStochastic: return "doubly-stochastic";
  }
  return "unknown";
}

bool at_least(OperatorClass actual, OperatorClass required) {
  return static_cast<int>(actual) >= static_cast<int>(required);
}

// ------------------------------------------------------- aligned functions

AlignedFunction::AlignedFunction(Partition p, std::vector<Rational> v)
    : partition(std::move(p)), values(std::move(v)) {
  if (values.size() != partition.size()) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(values.size()) + " values for " +
                                                  std::to_string(partition.size()) + " atoms");
  }
  if (partition.has_unbounded_tail()) {
    for (const Rational& x : values) {
      if (x < 0) {
        throw Error(ErrorCode::NegativeValueOnInfiniteSpace,
                    "value " + to_string(x) + " on a space of infinite measure");
      }
    }
  }
}

StepFunction AlignedFunction::to_step_function() const {
  std::vector<Piece> pieces;
  pieces.reserve(values.size());
  for (std::size_t n = 0; n < values.size(); ++n) pieces.push_back({values[n], partition.mass(n)});
  return StepFunction::canonicalize(pieces, partition.total_measure());
}

Overlay Overlay::from_refinement(const AlignedFunction& fine, std::span<const std::size_t> group_sizes) {
  Overlay out;
  std::vector<Rational> coarse_masses;
  std::size_t at = 0;
  for (std::size_t size : group_sizes) {
    if (size == 0 || at + size > fine.values.size()) {
      throw Error(ErrorCode::PartitionMisaligned, "group sizes do not tile the fine partition");
    }
    std::vector<Piece> cell;
    Rational mass = 0;
    for (std::size_t i = at; i < at + size; ++i) {
      cell.push_back({fine.values[i], fine.partition.mass(i)});
      mass += fine.partition.mass(i);
    }
    coarse_masses.push_back(mass);
    out.cells.push_back(std::move(cell));
    at += size;
  }
  if (at != fine.values.size()) {
    throw Error(ErrorCode::PartitionMisaligned, "group sizes do not tile the fine partition");
  }
  if (fine.partition.has_unbounded_tail()) {
    out.coarse = Partition(std::move(coarse_masses), *fine.partition.tail_mass(), std::nullopt);
  } else {
    out.coarse = Partition(std::move(coarse_masses));
  }
  return out;
}

// ------------------------------------------------------------ classification

OperatorClass classify_matrix(const OperatorMatrix& d) {
  for (const Rational& x : d.entries()) {
    if (x < 0) throw Error(ErrorCode::NegativeEntry, "entry " + to_string(x) + " is negative");
  }
  for (const Rational& s : d.column_sums()) {
    if (s != 1) return OperatorClass::None;
  }
  bool all_equal = true;
  for (const Rational& s : d.row_sums()) {
    if (s > 1) return OperatorClass::Markov;
    if (s != 1) all_equal = false;
  }
  return all_equal ? OperatorClass::DoublyStochastic : OperatorClass::SemiDoublyStochastic;
}

std::vector<Rational> apply_matrix(const OperatorMatrix& d, std::span<const Rational> v) {
  if (v.size() != d.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "vector of length " + std::to_string(v.size()) +
                                                  " for " + std::to_string(d.cols()) + " columns");
  }
  std::vector<Rational> out(d.rows(), Rational(0));
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) out[i] += d(i, j) * v[j];
  return out;
}

OperatorMatrix t_transform_matrix(std::size_t n, const TTransform& t) {
  OperatorMatrix m = OperatorMatrix::identity(n);
  m(t.j, t.j) = t.lambda;
  m(t.k, t.k) = t.lambda;
  m(t.j, t.k) = 1 - t.lambda;
  m(t.k, t.j) = 1 - t.lambda;
  return m;
}

// ----------------------------------------------------------- partition maps

std::vector<Rational> phi(const Partition& p, const AlignedFunction& f) {
  if (!(f.partition == p)) throw Error(ErrorCode::PartitionMisaligned, "function is not aligned with P");
  std::vector<Rational> out(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) out[n] = f.values[n] * p.mass(n);
  return out;
}

AlignedFunction psi(const Partition& p, std::span<const Rational> a) {
  if (a.size() > p.size()) {
    throw Error(ErrorCode::DimensionMismatch, "sequence longer than the partition");
  }
  std::vector<Rational> values(p.size(), Rational(0));
  for (std::size_t n = 0; n < a.size(); ++n) values[n] = a[n] / p.mass(n);
  return AlignedFunction(p, std::move(values));
}

AlignedFunction partition_average(const Overlay& overlay) {
  const Partition& p = overlay.coarse;
  if (overlay.cells.size() != p.size()) {
    throw Error(ErrorCode::PartitionMisaligned, "overlay has " + std::to_string(overlay.cells.size()) +
                                                    " cells for " + std::to_string(p.size()) + " atoms");
  }
  std::vector<Rational> values(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    Rational mass = 0;
    Rational mass_times_value = 0;
    for (const Piece& piece : overlay.cells[n]) {
      mass += piece.mass;
      mass_times_value += piece.value * piece.mass;
    }
    if (mass != p.mass(n)) {
      throw Error(ErrorCode::PartitionMisaligned, "overlap masses of atom " + std::to_string(n) +
                                                      " add up to " + to_string(mass) + ", not " +
                                                      to_string(p.mass(n)));
    }
    values[n] = mass_times_value / mass;
  }
  return AlignedFunction(p, std::move(values));
}

PartitionOperator averaging_operator(const Partition& fine, std::span<const std::size_t> group_sizes) {
  OperatorMatrix m(fine.size(), fine.size());
  std::size_t at = 0;
  for (std::size_t size : group_sizes) {
    if (size == 0 || at + size > fine.size()) {
      throw Error(ErrorCode::PartitionMisaligned, "group sizes do not tile the fine partition");
    }
    Rational group_mass = 0;
    for (std::size_t i = at; i < at + size; ++i) group_mass += fine.mass(i);
    for (std::size_t i = at; i < at + size; ++i)
      for (std::size_t j = at; j < at + size; ++j) m(i, j) = fine.mass(j) / group_mass;
    at += size;
  }
  if (at != fine.size()) throw Error(ErrorCode::PartitionMisaligned, "group sizes do not tile the fine partition");
  return {fine, fine, std::move(m)};
}

PartitionOperator to_value_basis(const Partition& domain, const Partition& codomain,
                                 const OperatorMatrix& d) {
  if (d.rows() != codomain.size() || d.cols() != domain.size()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix shape does not match the partitions");
  }
  OperatorMatrix m(d.rows(), d.cols());
  for (std::size_t n = 0; n < d.rows(); ++n) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (d(n, j) < 0) throw Error(ErrorCode::NegativeEntry, "entry " + to_string(d(n, j)) + " is negative");
      m(n, j) = d(n, j) * domain.mass(j) / codomain.mass(n);
    }
  }
  return {domain, codomain, std::move(m)};
}

PartitionOperator lift(const Partition& domain, const Partition& codomain, const OperatorMatrix& d) {
  if (d.rows() != codomain.size() || d.cols() != domain.size()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix shape does not match the partitions");
  }
  if (!at_least(classify_matrix(d), OperatorClass::SemiDoublyStochastic)) {
    throw Error(ErrorCode::NotStochastic, "lift needs a semi-doubly stochastic matrix");
  }
  // The partition invariants already guarantee inf mass > 0 for tails.
  return to_value_basis(domain, codomain, d);
}

PartitionOperator lift(const Partition& p, const OperatorMatrix& d) { return lift(p, p, d); }

OperatorMatrix restrict(const Partition& p, const PartitionOperator& s) {
  if (!(s.domain == p) || !(s.codomain == p)) {
    throw Error(ErrorCode::PartitionMisaligned, "operator does not act on P-aligned functions");
  }
  if (p.infimum_mass() <= 0) throw Error(ErrorCode::TailMassInfimumZero, "inf of atom masses is 0");
  if (!p.equal_masses()) {
    throw Error(ErrorCode::UnequalMassesUnsupported, "restrict needs equal atom masses");
  }
  if (!at_least(classify(s), OperatorClass::SemiDoublyStochastic)) {
    throw Error(ErrorCode::NotStochastic, "restrict needs a semi-doubly stochastic operator");
  }
  // Phi S Psi: e_n -> value 1/m_n on atom n -> S -> integrate each atom.
  OperatorMatrix r(s.values.rows(), s.values.cols());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t n = 0; n < r.cols(); ++n) r(i, n) = p.mass(i) * s.values(i, n) / p.mass(n);
  return r;
}

OperatorClass classify(const PartitionOperator& op) { return kernel_classify(kernel_of(op)); }

AlignedFunction apply(const PartitionOperator& op, const AlignedFunction& f) {
  if (!(f.partition == op.domain)) {
    throw Error(ErrorCode::PartitionMisaligned, "function is not aligned with the operator's domain");
  }
  return AlignedFunction(op.codomain, apply_matrix(op.values, f.values));
}

// ----------------------------------------------------------------- kernels

StepKernel matrix_to_kernel(const Partition& domain, const Partition& codomain, const OperatorMatrix& d) {
  if (d.rows() != codomain.size() || d.cols() != domain.size()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix shape does not match the partitions");
  }
  if (!at_least(classify_matrix(d), OperatorClass::Markov)) {
    throw Error(ErrorCode::NotStochastic, "kernel form needs at least a Markov matrix");
  }
  OperatorMatrix k(d.rows(), d.cols());
  for (std::size_t n = 0; n < d.rows(); ++n)
    for (std::size_t j = 0; j < d.cols(); ++j) k(n, j) = d(n, j) / codomain.mass(n);
  return {codomain, domain, std::move(k)};
}

StepKernel matrix_to_kernel(const Partition& p, const OperatorMatrix& d) {
  return matrix_to_kernel(p, p, d);
}

StepKernel kernel_of(const PartitionOperator& op) {
  OperatorMatrix k(op.values.rows(), op.values.cols());
  for (std::size_t n = 0; n < k.rows(); ++n)
    for (std::size_t j = 0; j < k.cols(); ++j) k(n, j) = op.values(n, j) / op.domain.mass(j);
  return {op.codomain, op.domain, std::move(k)};
}

std::vector<Rational> kernel_column_integrals(const StepKernel& k) {
  std::vector<Rational> out(k.values.cols(), Rational(0));
  for (std::size_t n = 0; n < k.values.rows(); ++n)
    for (std::size_t j = 0; j < k.values.cols(); ++j) out[j] += k.values(n, j) * k.row_partition.mass(n);
  return out;
}

std::vector<Rational> kernel_row_integrals(const StepKernel& k) {
  std::vector<Rational> out(k.values.rows(), Rational(0));
  for (std::size_t n = 0; n < k.values.rows(); ++n)
    for (std::size_t j = 0; j < k.values.cols(); ++j) out[n] += k.values(n, j) * k.col_partition.mass(j);
  return out;
}

OperatorClass kernel_classify(const StepKernel& k) {
  for (const Rational& x : k.values.entries()) {
    if (x < 0) throw Error(ErrorCode::NegativeEntry, "kernel value " + to_string(x) + " is negative");
  }
  for (const Rational& c : kernel_column_integrals(k)) {
    if (c != 1) return OperatorClass::None;
  }
  bool all_equal = true;
  for (const Rational& r : kernel_row_integrals(k)) {
    if (r > 1) return OperatorClass::Markov;
    if (r != 1) all_equal = false;
  }
  return all_equal ? OperatorClass::DoublyStochastic : OperatorClass::SemiDoublyStochastic;
}

AlignedFunction kernel_apply(const StepKernel& k, const AlignedFunction& g) {
  if (!(g.partition == k.col_partition)) {
    throw Error(ErrorCode::PartitionMisaligned, "function is not aligned with the kernel's columns");
  }
  std::vector<Rational> out(k.values.rows(), Rational(0));
  for (std::size_t n = 0; n < k.values.rows(); ++n)
    for (std::size_t j = 0; j < k.values.cols(); ++j)
      out[n] += k.values(n, j) * g.values[j] * k.col_partition.mass(j);
  return AlignedFunction(k.row_partition, std::move(out));
}

// --------------------------------------------------------------- witnesses

Partition equal_mass_refinement(const StepFunction& f, const StepFunction& g) {
  Rational atom = 0;
  auto absorb = [&atom](const StepFunction& h) {
    for (const Piece& p : h.pieces()) atom = rational_gcd(atom, p.mass);
  };
  absorb(f);
  absorb(g);
  if (atom == 0) atom = 1;

  if (f.total_measure().is_finite()) {
    Rational count = f.total_measure().value() / atom;
    return Partition::equal(numerator(count).convert_to<std::size_t>(), atom);
  }
  Rational cover = std::max(f.support_measure(), g.support_measure());
  Rational count = cover / atom;
  return Partition(std::vector<Rational>(numerator(count).convert_to<std::size_t>(), atom), atom,
                   std::nullopt);
}

AlignedFunction align_rearranged(const StepFunction& f, const Partition& p) {
  if (f.total_measure().is_finite() != !p.has_unbounded_tail() ||
      (f.total_measure().is_finite() && f.total_measure() != p.total_measure())) {
    throw Error(ErrorCode::PartitionMisaligned, "partition and function measure different spaces");
  }
  const auto& pieces = f.pieces();
  std::vector<Rational> values;
  values.reserve(p.size());
  std::size_t k = 0;
  Rational left = pieces.empty() ? Rational(0) : pieces[0].mass;
  for (std::size_t n = 0; n < p.size(); ++n) {
    Rational need = p.mass(n);
    if (k >= pieces.size()) {
      values.emplace_back(0);
      continue;
    }
    if (need > left) {
      throw Error(ErrorCode::PartitionMisaligned,
                  "atom " + std::to_string(n) + " straddles a jump of the rearrangement");
    }
    values.push_back(pieces[k].value);
    left -= need;
    if (left == 0 && ++k < pieces.size()) left = pieces[k].mass;
  }
  if (k < pieces.size()) {
    throw Error(ErrorCode::PartitionMisaligned, "explicit atoms do not cover the support");
  }
  return AlignedFunction(p, std::move(values));
}

WitnessChain ds_witness_vectors(std::span<const Rational> target, std::span<const Rational> source) {
  if (target.size() != source.size()) {
    throw Error(ErrorCode::DimensionMismatch, "witness vectors differ in length");
  }
  const std::size_t n = source.size();
  std::vector<Rational> y(target.begin(), target.end());
  std::vector<Rational> x(source.begin(), source.end());
  std::sort(y.begin(), y.end(), std::greater<>());
  std::sort(x.begin(), x.end(), std::greater<>());

  Rational py = 0;
  Rational px = 0;
  for (std::size_t i = 0; i < n; ++i) {
    py += y[i];
    px += x[i];
    if (py > px) {
      throw Error(ErrorCode::NotMajorized, "target is not majorized by source (prefix " +
                                               std::to_string(i + 1) + ")");
    }
  }
  if (py != px) throw Error(ErrorCode::NotMajorized, "target and source sums differ");

  WitnessChain chain;
  chain.source_values = x;
  chain.target_values = y;
  chain.product = OperatorMatrix::identity(n);

  // Positional prefix dominance of x over y is preserved by every step and
  // each step settles at least one coordinate for good.
  std::size_t j = 0;
  while (true) {
    while (j < n && x[j] == y[j]) ++j;
    if (j == n) break;
    // x[j] > y[j] here: all earlier coordinates agree and prefix sums dominate.
    std::size_t k = j + 1;
    while (k < n && !(x[k] < y[k])) ++k;
    if (k == n) throw Error(ErrorCode::InternalInconsistency, "no receiving coordinate for T-transform");
    Rational delta = std::min(Rational(x[j] - y[j]), Rational(y[k] - x[k]));
    TTransform t{j, k, Rational(1 - delta / (x[j] - x[k]))};
    x[j] -= delta;
    x[k] += delta;
    chain.product = t_transform_matrix(n, t) * chain.product;
    chain.steps.push_back(t);
  }
  return chain;
}

WitnessChain ds_witness(const StepFunction& f, const StepFunction& g) {
  MajorizationVerdict v = majorize(f, g);
  if (!v.holds) throw Error(ErrorCode::NotMajorized, "f is not majorized by g");
  Partition p = equal_mass_refinement(f, g);
  AlignedFunction fa = align_rearranged(f, p);
  AlignedFunction ga = align_rearranged(g, p);
  WitnessChain chain = ds_witness_vectors(fa.values, ga.values);
  chain.source_partition = std::move(p);
  return chain;
}

namespace {

AlignedFunction dyadic_average(const StepFunction& h, const Partition& cells) {
  std::vector<Rational> values;
  values.reserve(cells.size());
  Rational a = 0;
  Rational below = 0;
  for (std::size_t n = 0; n < cells.size(); ++n) {
    Rational b = a + cells.mass(n);
    Rational above = partial_integral(h, b);
    values.push_back((above - below) / cells.mass(n));
    below = above;
    a = b;
  }
  return AlignedFunction(cells, std::move(values));
}

}  // namespace

std::vector<SdsStep> sds_approx_sequence(const StepFunction& f, const StepFunction& g,
                                         std::size_t n_steps, ApproxMode mode) {
  if (!majorize(g, f).holds) throw Error(ErrorCode::NotMajorized, "g is not majorized by f");

  std::vector<SdsStep> out;
  if (mode == ApproxMode::Exact) {
    WitnessChain w = ds_witness(g, f);
    PartitionOperator op = lift(w.source_partition, w.product);
    AlignedFunction source(w.source_partition, w.source_values);
    AlignedFunction image = apply(op, source);
    Rational err = l1_distance(image.to_step_function(), g);
    out.push_back({std::move(op), std::move(source), std::move(image), std::move(err)});
    return out;
  }

  Rational length = f.total_measure().is_finite()
                        ? f.total_measure().value()
                        : std::max(f.support_measure(), g.support_measure());
  if (length == 0) length = 1;
  std::size_t cells = 1;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    cells *= 2;
    Rational width = length / cells;
    Partition p = f.total_measure().is_finite()
                      ? Partition::equal(cells, width)
                      : Partition(std::vector<Rational>(cells, width), width, std::nullopt);
    AlignedFunction fk = dyadic_average(f, p);
    AlignedFunction gk = dyadic_average(g, p);
    WitnessChain w = ds_witness_vectors(gk.values, fk.values);
    PartitionOperator op = lift(p, w.product);
    AlignedFunction image = apply(op, fk);
    Rational err = l1_distance(image.to_step_function(), g);
    out.push_back({std::move(op), std::move(fk), std::move(image), std::move(err)});
  }
  return out;
}

}  // namespace majo
