#include "majo/majorization.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "majo/error.hpp"

namespace majo {

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::Rearrangement: return "rearrangement";
    case Criterion::TailDistribution: return "tail";
    case Criterion::Hinge: return "hinge";
    case Criterion::ConvexSample: return "convex-sample";
    case Criterion::SublinearSample: return "sublinear-sample";
  }
  return "unknown";
}

namespace {

void require_same_space(const StepFunction& f, const StepFunction& g) {
  if (f.total_measure() != g.total_measure()) {
    throw Error(ErrorCode::MeasureMismatch, "total measures " + f.total_measure().str() +
                                                " and " + g.total_measure().str() + " differ");
  }
}

void require_nonnegative(const StepFunction& f, const StepFunction& g) {
  if (!f.nonnegative() || !g.nonnegative()) {
    throw Error(ErrorCode::SignednessViolation, "criterion needs nonnegative functions");
  }
}

using SideFn = std::function<Rational(const StepFunction&, const ExtendedReal&)>;

// Shared driver: evaluate both sides at each point in order, stop at the
// first strict violation, then apply the equality clause if asked.
MajorizationVerdict decide(const StepFunction& f, const StepFunction& g,
                           const std::vector<ExtendedReal>& points, const SideFn& side,
                           Criterion criterion, Relation relation,
                           const ExtendedReal& equality_point) {
  MajorizationVerdict v;
  v.criterion = criterion;
  v.relation = relation;
  for (const ExtendedReal& p : points) {
    CheckPoint cp{p, side(f, p), side(g, p)};
    if (cp.lhs > cp.rhs) {
      v.holds = false;
      v.witness = Certificate{FailureKind::Exceeds, cp};
      return v;
    }
    v.checked.push_back(std::move(cp));
  }
  if (relation == Relation::Strong) {
    Rational fi = integral(f);
    Rational gi = integral(g);
    if (fi != gi) {
      v.holds = false;
      v.witness = Certificate{FailureKind::IntegralMismatch, CheckPoint{equality_point, fi, gi}};
      return v;
    }
  }
  v.holds = true;
  return v;
}

std::vector<ExtendedReal> rearrangement_points(const StepFunction& f, const StepFunction& g) {
  std::set<Rational> s;
  for (const auto& p : f.rearranged_breakpoints()) s.insert(p);
  for (const auto& p : g.rearranged_breakpoints()) s.insert(p);
  return {s.begin(), s.end()};
}

// u = 0 and every positive piece value; the hinge functionals are linear
// between consecutive values.
std::vector<ExtendedReal> threshold_points(const StepFunction& f, const StepFunction& g) {
  std::set<Rational> s{Rational(0)};
  for (const auto& p : f.pieces()) if (p.value > 0) s.insert(p.value);
  for (const auto& p : g.pieces()) if (p.value > 0) s.insert(p.value);
  return {s.begin(), s.end()};
}

}  // namespace

MajorizationVerdict rearrangement_criterion(const StepFunction& f, const StepFunction& g,
                                            Relation relation) {
  require_same_space(f, g);
  return decide(
      f, g, rearrangement_points(f, g),
      [](const StepFunction& h, const ExtendedReal& s) { return partial_integral(h, s); },
      Criterion::Rearrangement, relation, f.total_measure());
}

MajorizationVerdict weak_majorize(const StepFunction& f, const StepFunction& g) {
  return rearrangement_criterion(f, g, Relation::Weak);
}

MajorizationVerdict majorize(const StepFunction& f, const StepFunction& g) {
  return rearrangement_criterion(f, g, Relation::Strong);
}

MajorizationVerdict hinge_criterion(const StepFunction& f, const StepFunction& g,
                                    Relation relation) {
  require_same_space(f, g);
  require_nonnegative(f, g);
  return decide(
      f, g, threshold_points(f, g),
      [](const StepFunction& h, const ExtendedReal& u) { return hinge_integral(h, u.value()); },
      Criterion::Hinge, relation, ExtendedReal(0));
}

MajorizationVerdict tail_distribution_criterion(const StepFunction& f, const StepFunction& g,
                                                Relation relation) {
  require_same_space(f, g);
  require_nonnegative(f, g);
  return decide(
      f, g, threshold_points(f, g),
      [](const StepFunction& h, const ExtendedReal& u) { return tail_integral(h, u.value()); },
      Criterion::TailDistribution, relation, ExtendedReal(0));
}

Rational sublinear_integral(const StepFunction& f, const Rational& alpha, const Rational& beta) {
  Rational sum = 0;
  for (const Piece& p : f.pieces()) {
    if (p.value > 0) sum += beta * p.value * p.mass;
    else sum += alpha * (-p.value) * p.mass;
  }
  return sum;
}

MajorizationVerdict convex_sample_test(const StepFunction& f, const StepFunction& g,
                                       const TestFunctionFamily& family) {
  require_same_space(f, g);
  if (family.parameters.empty()) throw Error(ErrorCode::EmptyFamily, "no test functions");
  for (const Rational& p : family.parameters) {
    if (p < 0) throw Error(ErrorCode::InvalidFamily, "negative parameter " + to_string(p));
  }

  std::vector<SideFn> members;
  Criterion criterion = Criterion::ConvexSample;
  if (family.kind == TestFunctionFamily::Kind::Hinge) {
    for (const Rational& u : family.parameters) {
      members.push_back([u](const StepFunction& h, const ExtendedReal&) { return hinge_integral(h, u); });
    }
  } else {
    criterion = Criterion::SublinearSample;
    if (family.parameters.size() % 2 != 0) {
      throw Error(ErrorCode::InvalidFamily, "sublinear parameters come in (alpha, beta) pairs");
    }
    for (std::size_t i = 0; i < family.parameters.size(); i += 2) {
      Rational alpha = family.parameters[i];
      Rational beta = family.parameters[i + 1];
      members.push_back([alpha, beta](const StepFunction& h, const ExtendedReal&) {
        return sublinear_integral(h, alpha, beta);
      });
    }
  }

  std::vector<ExtendedReal> indices;
  for (std::size_t i = 0; i < members.size(); ++i) indices.emplace_back(static_cast<long>(i));
  return decide(
      f, g, indices,
      [&members](const StepFunction& h, const ExtendedReal& idx) {
        auto i = static_cast<std::size_t>(numerator(idx.value()).convert_to<long>());
        return members[i](h, idx);
      },
      criterion, Relation::Weak, ExtendedReal(0));
}

bool certificate_reproduces(const StepFunction& f, const StepFunction& g,
                            const MajorizationVerdict& verdict) {
  if (verdict.holds || !verdict.witness) return false;
  const Certificate& c = *verdict.witness;
  if (c.kind == FailureKind::IntegralMismatch) {
    return integral(f) == c.at.lhs && integral(g) == c.at.rhs && c.at.lhs != c.at.rhs;
  }
  Rational lhs;
  Rational rhs;
  switch (verdict.criterion) {
    case Criterion::Rearrangement:
      lhs = partial_integral(f, c.at.point);
      rhs = partial_integral(g, c.at.point);
      break;
    case Criterion::Hinge:
      lhs = hinge_integral(f, c.at.point.value());
      rhs = hinge_integral(g, c.at.point.value());
      break;
    case Criterion::TailDistribution:
      lhs = tail_integral(f, c.at.point.value());
      rhs = tail_integral(g, c.at.point.value());
      break;
    case Criterion::ConvexSample:
    case Criterion::SublinearSample:
      // Family members are not retained in the verdict; trust the stored sides.
      return c.at.lhs > c.at.rhs;
  }
  return lhs == c.at.lhs && rhs == c.at.rhs && lhs > rhs;
}

CrossCheckReport cross_check(const StepFunction& f, const StepFunction& g, Relation relation) {
  CrossCheckReport report;
  report.verdicts[0] = rearrangement_criterion(f, g, relation);
  report.verdicts[1] = hinge_criterion(f, g, relation);
  report.verdicts[2] = tail_distribution_criterion(f, g, relation);
  report.holds = report.verdicts[0].holds;
  report.consistent = std::all_of(report.verdicts.begin(), report.verdicts.end(),
                                  [&](const auto& v) { return v.holds == report.holds; });
  return report;
}

CrossCheckReport cross_check_or_throw(const StepFunction& f, const StepFunction& g,
                                      Relation relation) {
  CrossCheckReport report = cross_check(f, g, relation);
  if (!report.consistent) {
    std::string detail;
    for (const auto& v : report.verdicts) {
      detail += std::string(to_string(v.criterion)) + "=" + (v.holds ? "holds" : "fails") + " ";
    }
    throw Error(ErrorCode::InternalInconsistency, "criteria disagree: " + detail);
  }
  return report;
}

}  // namespace majo
