#include "majo/selftest.hpp"

#include <functional>

#include "majo/diagnostics.hpp"
#include "majo/error.hpp"
#include "majo/io.hpp"
#include "majo/majorization.hpp"
#include "majo/operators.hpp"
#include "majo/random.hpp"

namespace majo {

namespace {

using random::Engine;

// Runs `check` `iterations` times; a false return or an exception counts as
// a failure and the first one is described.
SuiteResult run_suite(const std::string& name, std::size_t iterations, Engine& rng,
                      const std::function<bool(Engine&, std::string&)>& check) {
  SuiteResult result;
  result.name = name;
  for (std::size_t i = 0; i < iterations; ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = check(rng, detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    if (ok) {
      ++result.passed;
    } else {
      ++result.failed;
      if (result.first_failure.empty()) {
        result.first_failure = "case " + std::to_string(i) + ": " + detail;
      }
    }
  }
  return result;
}

StepFunction random_function(Engine& rng) {
  bool infinite = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  return random::step_function(rng, {5, infinite, false});
}

// g on an equal-mass partition, and its image under a random DS (finite
// space) or SDS (infinite space) matrix.
std::pair<AlignedFunction, AlignedFunction> random_image(Engine& rng) {
  std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
  Rational mass = random::positive_rational(rng);
  bool infinite = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  if (!infinite) {
    Partition p = Partition::equal(n, mass);
    AlignedFunction g(p, random::vector(rng, n, false));
    return {g, apply(lift(p, random::doubly_stochastic(rng, n)), g)};
  }
  std::size_t rows = n + std::uniform_int_distribution<std::size_t>(0, 3)(rng);
  Partition dom(std::vector<Rational>(n, mass), mass, std::nullopt);
  Partition cod(std::vector<Rational>(rows, mass), mass, std::nullopt);
  AlignedFunction g(dom, random::vector(rng, n, false));
  return {g, apply(lift(dom, cod, random::semi_doubly_stochastic(rng, rows, n)), g)};
}

}  // namespace

std::vector<SuiteResult> run_selftest(std::uint64_t seed, std::size_t iterations) {
  Engine rng(seed);
  std::vector<SuiteResult> out;

  out.push_back(run_suite("criterion-equivalence", iterations, rng, [](Engine& r, std::string& d) {
    StepFunction f = random_function(r);
    StepFunction g = f.total_measure().is_finite()
                         ? random::step_function_with_total(r, f.total_measure().value())
                         : random::step_function(r, {5, true, false});
    for (Relation rel : {Relation::Strong, Relation::Weak}) {
      CrossCheckReport rep = cross_check(f, g, rel);
      if (!rep.consistent) {
        d = "criteria disagree on\n" + io::format_sfn(f) + "vs\n" + io::format_sfn(g);
        return false;
      }
      for (const auto& v : rep.verdicts) {
        if (!v.holds && !certificate_reproduces(f, g, v)) {
          d = "certificate does not reproduce";
          return false;
        }
      }
    }
    return true;
  }));

  out.push_back(run_suite("hinge-identity", iterations, rng, [](Engine& r, std::string& d) {
    StepFunction f = random_function(r);
    for (int i = 0; i < 4; ++i) {
      Rational u = random::nonnegative_rational(r);
      if (hinge_integral(f, u) != tail_integral(f, u)) {
        d = "hinge != tail at u = " + to_string(u);
        return false;
      }
      if (distribution(rearrangement(f), u) != distribution(f, u)) {
        d = "not equimeasurable at t = " + to_string(u);
        return false;
      }
    }
    return integral(f) == hinge_integral(f, 0);
  }));

  out.push_back(run_suite("preorder", iterations, rng, [](Engine& r, std::string& d) {
    auto [g, f] = random_image(r);
    StepFunction gs = g.to_step_function();
    StepFunction fs = f.to_step_function();
    if (!majorize(gs, gs).holds) {
      d = "not reflexive";
      return false;
    }
    // A further DS averaging of f stays below g.
    Partition p = f.partition;
    OperatorMatrix d2 = random::doubly_stochastic(r, p.size());
    if (!p.equal_masses()) return true;
    StepFunction hs = apply(lift(p, d2), f).to_step_function();
    if (!(majorize(fs, gs).holds && majorize(hs, fs).holds && majorize(hs, gs).holds)) {
      d = "transitivity chain broken";
      return false;
    }
    return true;
  }));

  out.push_back(run_suite("sds-implies-majorization", iterations, rng, [](Engine& r, std::string& d) {
    auto [g, f] = random_image(r);
    if (!majorize(f.to_step_function(), g.to_step_function()).holds) {
      d = "S g not majorized by g";
      return false;
    }
    return true;
  }));

  out.push_back(run_suite("witness", iterations, rng, [](Engine& r, std::string& d) {
    auto [g, f] = random_image(r);
    StepFunction gs = g.to_step_function();
    StepFunction fs = f.to_step_function();
    WitnessChain w = ds_witness(fs, gs);
    std::size_t n = w.source_values.size();
    if (n > 0 && w.steps.size() > n - 1) {
      d = "chain longer than N - 1";
      return false;
    }
    for (const TTransform& t : w.steps) {
      if (classify_matrix(t_transform_matrix(n, t)) != OperatorClass::DoublyStochastic) {
        d = "factor not doubly stochastic";
        return false;
      }
    }
    if (n > 0 && classify_matrix(w.product) != OperatorClass::DoublyStochastic) {
      d = "product not doubly stochastic";
      return false;
    }
    if (apply_matrix(w.product, w.source_values) != w.target_values) {
      d = "D v_g != v_f";
      return false;
    }
    AlignedFunction image = apply(lift(w.source_partition, w.product),
                                  AlignedFunction(w.source_partition, w.source_values));
    return l1_distance(image.to_step_function(), fs) == 0;
  }));

  out.push_back(run_suite("markov-norm", iterations, rng, [](Engine& r, std::string& d) {
    std::size_t rows = std::uniform_int_distribution<std::size_t>(1, 6)(r);
    std::size_t cols = std::uniform_int_distribution<std::size_t>(1, 6)(r);
    OperatorMatrix m = random::markov(r, rows, cols);
    auto pos = random::vector(r, cols, false);
    auto sig = random::vector(r, cols, true);
    if (l1_norm(apply_matrix(m, pos)) != l1_norm(pos)) {
      d = "norm not preserved on a nonnegative vector";
      return false;
    }
    return l1_norm(apply_matrix(m, sig)) <= l1_norm(sig);
  }));

  out.push_back(run_suite("kernel-consistency", iterations, rng, [](Engine& r, std::string& d) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(r);
    std::vector<Rational> masses;
    for (std::size_t i = 0; i < n; ++i) masses.push_back(random::positive_rational(r));
    Partition p(masses);
    OperatorMatrix dm = random::doubly_stochastic(r, n);
    StepKernel k = matrix_to_kernel(p, dm);
    PartitionOperator op = lift(p, dm);
    AlignedFunction f(p, random::vector(r, n, true));
    if (!(kernel_apply(k, f) == apply(op, f))) {
      d = "kernel_apply differs from lift";
      return false;
    }
    if (kernel_classify(k) != classify(op)) {
      d = "kernel and lifted classifications differ";
      return false;
    }
    for (const Rational& c : kernel_column_integrals(k)) {
      if (c != 1) {
        d = "column integral " + to_string(c);
        return false;
      }
    }
    return true;
  }));

  out.push_back(run_suite("composition-closure", iterations, rng, [](Engine& r, std::string& d) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(r);
    std::size_t m = n + std::uniform_int_distribution<std::size_t>(0, 2)(r);
    std::size_t l = m + std::uniform_int_distribution<std::size_t>(0, 2)(r);
    OperatorMatrix a = random::semi_doubly_stochastic(r, m, n);
    OperatorMatrix b = random::semi_doubly_stochastic(r, l, m);
    if (!at_least(classify_matrix(b * a), OperatorClass::SemiDoublyStochastic)) {
      d = "SDS product below SDS";
      return false;
    }
    OperatorMatrix c = random::doubly_stochastic(r, n);
    OperatorMatrix e = random::doubly_stochastic(r, n);
    return classify_matrix(c * e) == OperatorClass::DoublyStochastic;
  }));

  out.push_back(run_suite("equi-integrability", iterations, rng, [](Engine& r, std::string& d) {
    auto [f, sf] = random_image(r);
    StepFunction fs = f.to_step_function();
    StepFunction ss = sf.to_step_function();
    if (integral(ss) != integral(fs)) {
      d = "integral not preserved";
      return false;
    }
    std::vector<Rational> grid{Rational(0)};
    for (const Piece& p : fs.pieces()) grid.push_back(p.value);
    for (int k = 1; k <= 8; ++k) {
      Rational delta(Integer(1), Integer(1) << k);
      if (ExtendedReal(delta) > fs.total_measure()) continue;
      Rational modulus = small_set_modulus(ss, delta);
      for (const Rational& c : grid) {
        if (modulus > equi_bound(fs, c, delta)) {
          d = "modulus above bound at delta = " + to_string(delta) + ", c = " + to_string(c);
          return false;
        }
      }
    }
    return true;
  }));

  return out;
}

}  // namespace majo
