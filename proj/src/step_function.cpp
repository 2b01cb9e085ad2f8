#include "majo/step_function.hpp"

#include <algorithm>
#include <map>

#include "majo/error.hpp"

namespace majo {

StepFunction::StepFunction(std::vector<Piece> pieces, ExtendedReal total)
    : pieces_(std::move(pieces)), total_(std::move(total)) {
  nonnegative_ = std::all_of(pieces_.begin(), pieces_.end(),
                             [](const Piece& p) { return p.value >= 0; });
}

StepFunction StepFunction::canonicalize(std::span<const Piece> raw, const ExtendedReal& total) {
  if (total.is_finite() && total.value() < 0) {
    throw Error(ErrorCode::NegativeMass, "total measure " + total.str() + " is negative");
  }

  // Keyed by value in decreasing order so equal values merge.
  std::map<Rational, Rational, std::greater<>> merged;
  Rational covered = 0;
  for (const Piece& p : raw) {
    if (p.mass <= 0) {
      throw Error(ErrorCode::NegativeMass, "piece with value " + to_string(p.value) +
                                               " has mass " + to_string(p.mass));
    }
    if (total.is_infinite() && p.value < 0) {
      throw Error(ErrorCode::NegativeValueOnInfiniteSpace,
                  "value " + to_string(p.value) + " on a space of infinite measure");
    }
    covered += p.mass;
    merged[p.value] += p.mass;
  }

  if (total.is_finite()) {
    if (covered > total.value()) {
      throw Error(ErrorCode::MassExceedsTotal, "pieces cover " + to_string(covered) +
                                                   " > total " + total.str());
    }
    if (covered < total.value()) merged[Rational(0)] += total.value() - covered;
  } else {
    merged.erase(Rational(0));
  }

  std::vector<Piece> pieces;
  pieces.reserve(merged.size());
  for (auto& [value, mass] : merged) pieces.push_back({value, mass});
  return StepFunction(std::move(pieces), total);
}

StepFunction StepFunction::zero(const ExtendedReal& total) {
  return canonicalize(std::span<const Piece>{}, total);
}

StepFunction StepFunction::indicator(const Rational& value, const Rational& mass,
                                     const ExtendedReal& total) {
  return canonicalize({Piece{value, mass}}, total);
}

Rational StepFunction::support_measure() const {
  Rational m = 0;
  for (const Piece& p : pieces_) {
    if (p.value != 0) m += p.mass;
  }
  return m;
}

std::vector<Rational> StepFunction::rearranged_breakpoints() const {
  std::vector<Rational> points{Rational(0)};
  Rational s = 0;
  for (const Piece& p : pieces_) {
    s += p.mass;
    points.push_back(s);
  }
  return points;
}

Rational integral(const StepFunction& f) {
  Rational sum = 0;
  for (const Piece& p : f.pieces()) sum += p.value * p.mass;
  return sum;
}

ExtendedReal distribution(const StepFunction& f, const Rational& t) {
  if (f.has_infinite_tail() && t < 0) return ExtendedReal::infinity();
  Rational m = 0;
  for (const Piece& p : f.pieces()) {
    if (p.value <= t) break;
    m += p.mass;
  }
  return m;
}

StepFunction rearrangement(const StepFunction& f) { return f; }

Rational partial_integral(const StepFunction& f, const ExtendedReal& s) {
  if (s < ExtendedReal(0) || s > f.total_measure()) {
    throw Error(ErrorCode::SOutOfRange,
                "s = " + s.str() + " outside [0, " + f.total_measure().str() + "]");
  }
  Rational sum = 0;
  ExtendedReal remaining = s;
  for (const Piece& p : f.pieces()) {
    if (remaining <= ExtendedReal(0)) break;
    if (remaining >= ExtendedReal(p.mass)) {
      sum += p.value * p.mass;
      remaining = remaining - ExtendedReal(p.mass);
    } else {
      sum += p.value * remaining.value();
      remaining = ExtendedReal(0);
    }
  }
  // Past the listed pieces only the zero tail remains.
  return sum;
}

Rational hinge_integral(const StepFunction& f, const Rational& u) {
  if (f.has_infinite_tail() && u < 0) {
    throw Error(ErrorCode::DivergentHinge, "u = " + to_string(u) + " < 0 on an infinite space");
  }
  Rational sum = 0;
  for (const Piece& p : f.pieces()) {
    if (p.value <= u) break;
    sum += (p.value - u) * p.mass;
  }
  return sum;
}

Rational tail_integral(const StepFunction& f, const Rational& u) {
  if (f.has_infinite_tail() && u < 0) {
    throw Error(ErrorCode::DivergentHinge, "u = " + to_string(u) + " < 0 on an infinite space");
  }
  // d_f is constant on [v_{k+1}, v_k) between consecutive distinct values and
  // vanishes above the largest one. Walk the intervals from the top down to u.
  const auto& pieces = f.pieces();
  Rational sum = 0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const Rational& upper = pieces[k].value;
    if (upper <= u) break;
    Rational lower = k + 1 < pieces.size() ? pieces[k + 1].value : Rational(0);
    if (lower < u) lower = u;
    if (!f.has_infinite_tail() && k + 1 == pieces.size()) lower = u;
    if (lower >= upper) continue;
    ExtendedReal level = distribution(f, lower);
    sum += level.value() * (upper - lower);
  }
  return sum;
}

Rational ess_sup(const StepFunction& f) {
  if (f.pieces().empty()) return 0;
  const Rational& top = f.pieces().front().value;
  if (f.has_infinite_tail() && top < 0) return 0;
  return top;
}

Rational ess_inf(const StepFunction& f) {
  if (f.has_infinite_tail() || f.pieces().empty()) return 0;
  return f.pieces().back().value;
}

}  // namespace majo
