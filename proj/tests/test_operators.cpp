#include <doctest.h>

#include "majo/diagnostics.hpp"
#include "majo/majorization.hpp"
#include "majo/operators.hpp"
#include "majo/random.hpp"
#include "support.hpp"

using namespace test;
using majo::AlignedFunction;
using majo::ErrorCode;
using majo::OperatorClass;
using majo::OperatorMatrix;
using majo::Partition;

namespace {

OperatorMatrix mat(std::size_t r, std::size_t c, std::initializer_list<Rational> e) {
  return OperatorMatrix(r, c, std::vector<Rational>(e));
}

OperatorMatrix t1_truncation() {
  OperatorMatrix m(4, 4);
  for (std::size_t j = 0; j < 4; ++j) m(0, j) = 1;
  return m;
}

OperatorMatrix shift_truncation(std::size_t n) {
  OperatorMatrix m(n + 1, n);
  for (std::size_t j = 0; j < n; ++j) m(j + 1, j) = 1;
  return m;
}

std::vector<Rational> vec(std::initializer_list<Rational> v) { return v; }

}  // namespace

TEST_CASE("classify the sequence-space examples") {
  CHECK(majo::classify_matrix(t1_truncation()) == OperatorClass::Markov);
  CHECK(majo::classify_matrix(shift_truncation(4)) == OperatorClass::SemiDoublyStochastic);
  CHECK(majo::classify_matrix(OperatorMatrix::identity(5)) == OperatorClass::DoublyStochastic);
  CHECK(majo::classify_matrix(mat(2, 2, {q(1), q(1), q(0), q(0)})) == OperatorClass::Markov);
  CHECK(majo::classify_matrix(mat(2, 2, {q(1), q(0), q(1), q(0)})) == OperatorClass::None);
  CHECK(error_of([] { majo::classify_matrix(mat(1, 1, {q(-1)})); }) == ErrorCode::NegativeEntry);
  CHECK(majo::to_string(OperatorClass::DoublyStochastic) == "doubly-stochastic");
  CHECK(majo::at_least(OperatorClass::DoublyStochastic, OperatorClass::Markov));
  CHECK_FALSE(majo::at_least(OperatorClass::Markov, OperatorClass::SemiDoublyStochastic));
}

TEST_CASE("apply_matrix") {
  CHECK(majo::apply_matrix(OperatorMatrix::identity(3), vec({q(1), q(5), q(2)})) ==
        vec({q(1), q(5), q(2)}));
  CHECK(majo::apply_matrix(mat(2, 2, {q(1, 2), q(1, 2), q(1, 2), q(1, 2)}), vec({q(2), q(0)})) ==
        vec({q(1), q(1)}));
  CHECK(majo::apply_matrix(shift_truncation(3), vec({q(1), q(2), q(3)})) ==
        vec({q(0), q(1), q(2), q(3)}));
  CHECK(error_of([] { majo::apply_matrix(OperatorMatrix::identity(2), vec({q(1)})); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("phi and psi") {
  Partition p({q(1), q(1)});
  AlignedFunction f(p, {q(2), q(2)});
  CHECK(majo::phi(p, f) == vec({q(2), q(2)}));
  CHECK(majo::phi(p, AlignedFunction(p, {q(0), q(0)})) == vec({q(0), q(0)}));
  Partition unequal({q(1, 2), q(3)});
  CHECK(majo::phi(unequal, AlignedFunction(unequal, {q(0), q(1)})) == vec({q(0), q(3)}));
  CHECK(majo::psi(p, vec({q(2), q(2)})).values == vec({q(2), q(2)}));
  CHECK(majo::psi(unequal, vec({q(1), q(6)})).values == vec({q(2), q(2)}));
  CHECK(majo::psi(p, vec({})).values == vec({q(0), q(0)}));
  CHECK(error_of([&] { majo::phi(unequal, f); }) == ErrorCode::PartitionMisaligned);
}

TEST_CASE("partition averaging") {
  Partition fine({q(1), q(1)});
  AlignedFunction f(fine, {q(3), q(1)});
  std::vector<std::size_t> groups{2};
  auto avg = majo::partition_average(majo::Overlay::from_refinement(f, groups));
  CHECK(avg.values == vec({q(2)}));
  CHECK(majo::majorize(avg.to_step_function(), f.to_step_function()).holds);

  auto g = majo::averaging_operator(fine, groups);
  CHECK(majo::classify(g) == OperatorClass::DoublyStochastic);
  CHECK(majo::apply(g, f).values == vec({q(2), q(2)}));

  std::vector<std::size_t> singletons{1, 1};
  CHECK(majo::partition_average(majo::Overlay::from_refinement(f, singletons)).values == f.values);

  majo::Overlay bad{Partition({q(2)}), {{{q(1), q(1)}}}};
  CHECK(error_of([&] { majo::partition_average(bad); }) == ErrorCode::PartitionMisaligned);
}

TEST_CASE("lift") {
  Partition p({q(1), q(1), q(1)});
  CHECK(majo::lift(p, OperatorMatrix::identity(3)).values == OperatorMatrix::identity(3));

  // Unequal masses: still integral-preserving but no longer contracting rows.
  Partition uneven({q(1), q(2)});
  auto m = majo::lift(uneven, mat(2, 2, {q(0), q(1), q(1), q(0)}));
  CHECK(m.values == mat(2, 2, {q(0), q(2), q(1, 2), q(0)}));
  CHECK(majo::classify(m) == OperatorClass::Markov);
  AlignedFunction f(uneven, {q(3), q(5)});
  CHECK(majo::integral(majo::apply(m, f).to_step_function()) == majo::integral(f.to_step_function()));

  CHECK(error_of([&] { majo::lift(p, mat(3, 3, {q(1), q(1), q(1), q(0), q(0), q(0), q(0), q(0), q(0)})); }) ==
        ErrorCode::NotStochastic);
  CHECK(error_of([] { Partition({q(1)}, q(0), std::nullopt); }) == ErrorCode::TailMassInfimumZero);
}

TEST_CASE("restrict") {
  Partition p({q(1, 2), q(1, 2), q(1, 2)});
  CHECK(majo::restrict(p, majo::lift(p, OperatorMatrix::identity(3))) == OperatorMatrix::identity(3));
  Partition uneven({q(1), q(2)});
  CHECK(error_of([&] { majo::restrict(uneven, majo::lift(uneven, OperatorMatrix::identity(2))); }) ==
        ErrorCode::UnequalMassesUnsupported);
}

TEST_CASE("kernels") {
  Partition p({q(1), q(1)});
  auto k = majo::matrix_to_kernel(p, OperatorMatrix::identity(2));
  CHECK(k.values == OperatorMatrix::identity(2));
  CHECK(majo::kernel_classify(k) == OperatorClass::DoublyStochastic);

  Partition shift_domain({q(1), q(1), q(1)});
  Partition shift_codomain({q(1), q(1), q(1), q(1)});
  auto ks = majo::matrix_to_kernel(shift_domain, shift_codomain, shift_truncation(3));
  CHECK(majo::kernel_row_integrals(ks).front() == 0);
  CHECK(majo::kernel_column_integrals(ks) == vec({q(1), q(1), q(1)}));
  CHECK(majo::kernel_classify(ks) == OperatorClass::SemiDoublyStochastic);

  majo::StepKernel zero{p, p, OperatorMatrix(2, 2)};
  CHECK(majo::kernel_classify(zero) == OperatorClass::None);

  AlignedFunction g(p, {q(3), q(1)});
  CHECK(majo::kernel_apply(k, g) == g);
  majo::StepKernel uniform{p, p, mat(2, 2, {q(1, 2), q(1, 2), q(1, 2), q(1, 2)})};
  CHECK(majo::kernel_apply(uniform, g).values == vec({q(2), q(2)}));
  CHECK(majo::kernel_apply(uniform, AlignedFunction(p, {q(0), q(0)})).values == vec({q(0), q(0)}));

  Partition uneven({q(1), q(3)});
  auto d = mat(2, 2, {q(1, 4), q(3, 4), q(3, 4), q(1, 4)});
  auto ku = majo::matrix_to_kernel(uneven, d);
  CHECK(majo::kernel_column_integrals(ku) == vec({q(1), q(1)}));
  CHECK(error_of([&] { majo::matrix_to_kernel(p, mat(2, 2, {q(1), q(0), q(0), q(0)})); }) ==
        ErrorCode::NotStochastic);
}

namespace {

// Oracle: brute-force search of 2x2 doubly stochastic matrices [[a,1-a],[1-a,a]]
// on a grid of a, returning every a with D source = target.
std::vector<Rational> brute_force_2x2(const std::vector<Rational>& source, const std::vector<Rational>& target) {
  std::vector<Rational> hits;
  for (int i = 0; i <= 120; ++i) {
    Rational a(i, 120);
    Rational b = 1 - a;
    if (a * source[0] + b * source[1] == target[0] && b * source[0] + a * source[1] == target[1]) {
      hits.push_back(a);
    }
  }
  return hits;
}

}  // namespace

TEST_CASE("T-transform witness") {
  auto w = majo::ds_witness_vectors(vec({q(1), q(1)}), vec({q(2), q(0)}));
  REQUIRE(w.steps.size() == 1);
  CHECK(w.steps[0].lambda == q(1, 2));
  CHECK(w.product == mat(2, 2, {q(1, 2), q(1, 2), q(1, 2), q(1, 2)}));
  CHECK(brute_force_2x2({q(2), q(0)}, {q(1), q(1)}) == vec({q(1, 2)}));

  auto same = majo::ds_witness(example_g(), example_g());
  CHECK(same.steps.empty());
  CHECK(same.product == OperatorMatrix::identity(same.source_partition.size()));

  CHECK(error_of([] { majo::ds_witness(example_f(), example_g()); }) == ErrorCode::NotMajorized);

  auto g = sf({{q(3), q(1)}, {q(1), q(1)}}, ExtendedReal(4));
  auto f = sf({{q(2), q(2)}}, ExtendedReal(4));
  auto chain = majo::ds_witness(f, g);
  CHECK(chain.source_partition == Partition::equal(4, q(1)));
  CHECK(majo::apply_matrix(chain.product, chain.source_values) == chain.target_values);
  auto lifted = majo::lift(chain.source_partition, chain.product);
  auto image = majo::apply(lifted, AlignedFunction(chain.source_partition, chain.source_values));
  CHECK(image.to_step_function() == f);
}

TEST_CASE("equal-mass refinement") {
  auto f = sf({{q(1), q(1, 2)}, {q(2), q(1, 3)}}, inf());
  auto g = sf({{q(1), q(2)}}, inf());
  auto p = majo::equal_mass_refinement(f, g);
  CHECK(p.mass(0) == q(1, 6));
  CHECK(p.size() == 12);
  CHECK(p.has_unbounded_tail());
  CHECK(*p.tail_mass() == q(1, 6));
}

TEST_CASE("property: random witnesses are exact and short") {
  majo::random::Engine rng(17);
  for (int it = 0; it < 150; ++it) {
    std::size_t n = 1 + it % 6;
    auto g = majo::random::vector(rng, n, false);
    auto d0 = majo::random::doubly_stochastic(rng, n);
    auto f = majo::apply_matrix(d0, g);
    auto w = majo::ds_witness_vectors(f, g);
    CHECK(w.steps.size() <= (n == 0 ? 0 : n - 1));
    CHECK(majo::apply_matrix(w.product, w.source_values) == w.target_values);
    CHECK(majo::classify_matrix(w.product) == OperatorClass::DoublyStochastic);
  }
}

TEST_CASE("property: lift and restrict round trip, kernel marginals") {
  majo::random::Engine rng(23);
  for (int it = 0; it < 100; ++it) {
    std::size_t n = 1 + it % 5;
    Rational m = majo::random::positive_rational(rng);
    Partition p = it % 2 ? Partition::equal(n, m) : Partition(std::vector<Rational>(n, m), m, std::nullopt);
    auto d = majo::random::semi_doubly_stochastic(rng, n, n);
    auto lifted = majo::lift(p, d);
    CHECK(majo::restrict(p, lifted) == d);
    CHECK(majo::at_least(majo::classify_matrix(majo::restrict(p, lifted)), OperatorClass::SemiDoublyStochastic));
    auto k = majo::matrix_to_kernel(p, d);
    for (const auto& c : majo::kernel_column_integrals(k)) CHECK(c == 1);
    for (const auto& r : majo::kernel_row_integrals(k)) CHECK(r <= 1);
    AlignedFunction f(p, majo::random::vector(rng, n, false));
    CHECK(majo::kernel_apply(k, f) == majo::apply(lifted, f));
    CHECK(majo::majorize(majo::apply(lifted, f).to_step_function(), f.to_step_function()).holds);
  }
}

TEST_CASE("SDS approximation sequence") {
  auto f = sf({{q(3), q(1)}, {q(1), q(1)}}, ExtendedReal(2));
  auto g = sf({{q(2), q(2)}}, ExtendedReal(2));
  auto exact = majo::sds_approx_sequence(f, g, 5);
  REQUIRE(exact.size() == 1);
  CHECK(exact[0].l1_error == 0);
  CHECK(majo::at_least(majo::classify(exact[0].op), OperatorClass::SemiDoublyStochastic));

  // Averaging over a coarse partition is its own approximating operator.
  Partition fine({q(1), q(1), q(1), q(1)});
  AlignedFunction h(fine, {q(4), q(2), q(1), q(1)});
  std::vector<std::size_t> groups{2, 2};
  auto averaged = majo::apply(majo::averaging_operator(fine, groups), h);
  auto seq = majo::sds_approx_sequence(h.to_step_function(), averaged.to_step_function(), 1);
  REQUIRE(seq.size() == 1);
  CHECK(seq[0].l1_error == 0);

  // Breakpoints at thirds never land on a dyadic grid.
  auto fa = sf({{q(2), q(1, 3)}, {q(1, 2), q(2, 3)}}, ExtendedReal(1));
  auto ga = sf({{q(3, 2), q(1, 3)}, {q(3, 4), q(2, 3)}}, ExtendedReal(1));
  REQUIRE(majo::majorize(ga, fa).holds);
  auto approx = majo::sds_approx_sequence(fa, ga, 8, majo::ApproxMode::Dyadic);
  REQUIRE(approx.size() == 8);
  for (std::size_t k = 0; k < approx.size(); ++k) {
    CHECK(majo::at_least(majo::classify(approx[k].op), OperatorClass::SemiDoublyStochastic));
    CHECK(approx[k].l1_error > 0);
    if (k > 0) CHECK(approx[k].l1_error < approx[k - 1].l1_error);
  }
  CHECK(error_of([&] { majo::sds_approx_sequence(ga, fa, 2); }) == ErrorCode::NotMajorized);
}
