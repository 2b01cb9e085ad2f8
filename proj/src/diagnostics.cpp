#include "majo/diagnostics.hpp"

#include <algorithm>
#include <set>

#include "majo/error.hpp"

namespace majo {

Rational small_set_modulus(const StepFunction& h, const Rational& delta) {
  if (!h.nonnegative()) throw Error(ErrorCode::SignednessViolation, "modulus needs nonnegative h");
  if (delta < 0 || ExtendedReal(delta) > h.total_measure()) {
    throw Error(ErrorCode::DeltaOutOfRange,
                "delta = " + to_string(delta) + " outside [0, " + h.total_measure().str() + "]");
  }
  return partial_integral(h, delta);
}

Rational equi_bound(const StepFunction& source, const Rational& c, const Rational& delta) {
  return hinge_integral(source, c) + c * delta;
}

EquiIntegrabilityReport equi_modulus(std::span<const StepFunction> family, const StepFunction& source,
                                     const Rational& delta, std::span<const Rational> c_grid) {
  if (family.empty()) throw Error(ErrorCode::EmptyFamily, "empty operator family");

  EquiIntegrabilityReport report;
  report.delta = delta;
  report.family_size = family.size();
  report.modulus = 0;
  for (const StepFunction& member : family) {
    report.modulus = std::max(report.modulus, small_set_modulus(member, delta));
  }

  std::vector<Rational> grid(c_grid.begin(), c_grid.end());
  if (grid.empty()) {
    std::set<Rational> levels{Rational(0)};
    for (const Piece& p : source.pieces()) {
      if (p.value > 0) levels.insert(p.value);
    }
    grid.assign(levels.begin(), levels.end());
  }

  bool first = true;
  for (const Rational& c : grid) {
    Rational b = equi_bound(source, c, delta);
    if (first || b < report.bound) {
      report.bound = b;
      report.best_c = c;
      first = false;
    }
  }
  report.within_bound = report.modulus <= report.bound;
  return report;
}

Rational l1_distance(const StepFunction& f, const StepFunction& g) {
  if (f.total_measure() != g.total_measure()) {
    throw Error(ErrorCode::MeasureMismatch, "total measures " + f.total_measure().str() +
                                                " and " + g.total_measure().str() + " differ");
  }
  // Merge the two rearranged axes: walk both piece lists, consuming the
  // shorter remaining run each time. Past the pieces both are zero.
  const auto& fp = f.pieces();
  const auto& gp = g.pieces();
  std::size_t i = 0;
  std::size_t j = 0;
  Rational fleft = fp.empty() ? Rational(0) : fp[0].mass;
  Rational gleft = gp.empty() ? Rational(0) : gp[0].mass;
  Rational sum = 0;
  while (i < fp.size() || j < gp.size()) {
    if (i < fp.size() && j < gp.size()) {
      Rational step = std::min(fleft, gleft);
      sum += abs(Rational(fp[i].value - gp[j].value)) * step;
      fleft -= step;
      gleft -= step;
      if (fleft == 0 && ++i < fp.size()) fleft = fp[i].mass;
      if (gleft == 0 && ++j < gp.size()) gleft = gp[j].mass;
    } else if (i < fp.size()) {
      sum += abs(fp[i].value) * fleft;
      if (++i < fp.size()) fleft = fp[i].mass;
    } else {
      sum += abs(gp[j].value) * gleft;
      if (++j < gp.size()) gleft = gp[j].mass;
    }
  }
  return sum;
}

Rational l1_distance(const AlignedFunction& f, const AlignedFunction& g) {
  if (!(f.partition == g.partition)) {
    throw Error(ErrorCode::PartitionMisaligned, "functions live on different partitions");
  }
  Rational sum = 0;
  for (std::size_t n = 0; n < f.values.size(); ++n) {
    sum += abs(Rational(f.values[n] - g.values[n])) * f.partition.mass(n);
  }
  return sum;
}

Rational l1_norm(std::span<const Rational> v) {
  Rational sum = 0;
  for (const Rational& x : v) sum += abs(x);
  return sum;
}

}  // namespace majo
