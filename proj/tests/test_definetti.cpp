#include <doctest.h>

#include <cmath>

#include "bosegas/accumulator.hpp"
#include "bosegas/definetti.hpp"
#include "bosegas/errors.hpp"
#include "bosegas/reduction.hpp"
#include "bosegas/rng.hpp"

using namespace bosegas;

namespace {

// test-local 1-d quadrature oracle (composite Simpson)
double simpson_01(const std::function<double(double)>& f, int intervals = 4096) {
  double total = f(0.0) + f(1.0);
  for (int i = 1; i < intervals; ++i) {
    total += f(i / static_cast<double>(intervals)) * (i % 2 == 0 ? 2.0 : 4.0);
  }
  return total / (3.0 * intervals);
}

}  // namespace

TEST_CASE("v_map") {
  SimplexPhasePoint vertex{{1.0, 0.0}, {0.0, 0.0}};
  const Vector e0 = v_map(vertex);
  CHECK(e0(0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(e0(1)) == 0.0);

  SimplexPhasePoint balanced{{0.5, 0.5}, {0.0, 0.0}};
  const Vector plus = v_map(balanced);
  CHECK(plus(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(plus(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(plus.norm() == doctest::Approx(1.0).epsilon(1e-12));

  // a global phase shift leaves the projector unchanged
  SimplexPhasePoint shifted{{0.3, 0.7}, {0.4, 1.1}};
  SimplexPhasePoint original{{0.3, 0.7}, {0.4 - 0.9, 1.1 - 0.9}};
  const Vector a = v_map(shifted);
  const Vector b = v_map(original);
  CHECK(((a * a.adjoint()) - (b * b.adjoint())).cwiseAbs().maxCoeff() < 1e-13);

  SimplexPhasePoint bad{{0.5, 0.6}, {0.0, 0.0}};
  CHECK_THROWS_AS(v_map(bad), ValidationError);
}

TEST_CASE("dirichlet moments") {
  CHECK(dirichlet_moment(OccupationVector({1, 0}), 1) == Rational(1, 2));
  CHECK(dirichlet_moment(OccupationVector({2, 0}), 1) == Rational(1, 3));
  CHECK(dirichlet_moment(OccupationVector({1, 1, 0}), 2) == Rational(1, 12));

  // Monte Carlo validation of the closed form
  for (const auto& occ : {OccupationVector({2, 1}), OccupationVector({1, 1, 1})}) {
    const int d = occ.level_parameter();
    ScalarAccumulator acc;
    for (std::size_t i = 0; i < 40000; ++i) {
      const SimplexPhasePoint point = sample_uniform_point(d, 1234, i);
      double monomial = 1.0;
      for (int level = 0; level <= d; ++level) {
        for (int rep = 0; rep < occ[level]; ++rep) monomial *= point.p[static_cast<std::size_t>(level)];
      }
      acc.push(monomial);
    }
    CHECK(std::abs(acc.mean() - to_double(dirichlet_moment(occ, d))) < 4.0 * acc.std_error());
  }
}

TEST_CASE("limit_uniform") {
  // d = 1 is flat over the m+1 occupation states
  for (int m = 1; m <= 5; ++m) {
    const SymOperator s = limit_uniform(m, 1);
    for (std::int64_t i = 0; i < s.dim(); ++i) {
      CHECK(s.matrix(i, i).real() == doctest::Approx(1.0 / (m + 1)).epsilon(1e-14));
    }
  }
  // m = 1 is flat over the d+1 levels
  for (int d = 1; d <= 3; ++d) {
    const SymOperator s = limit_uniform(1, d);
    for (std::int64_t i = 0; i < s.dim(); ++i) {
      CHECK(s.matrix(i, i).real() == doctest::Approx(1.0 / (d + 1)).epsilon(1e-14));
    }
  }
}

TEST_CASE("limit_uniform is exactly reduction-consistent") {
  for (int d = 1; d <= 3; ++d) {
    for (int m = 1; m <= 5; ++m) {
      const std::vector<Rational> big = limit_uniform_exact(m + 1, d);
      const std::vector<Rational> reduced = reduce_diagonal_exact(big, m + 1, d, m);
      const std::vector<Rational> expected = limit_uniform_exact(m, d);
      REQUIRE(reduced.size() == expected.size());
      for (std::size_t i = 0; i < expected.size(); ++i) CHECK(reduced[i] == expected[i]);
    }
  }
}

TEST_CASE("limit_noninteracting") {
  // beta = 0 and constant energies both give the uniform limit
  const SymOperator flat = limit_noninteracting(2, 1, 0.0, {0.0, 1.0});
  const SymOperator uniform = limit_uniform(2, 1);
  CHECK((flat.matrix - uniform.matrix).cwiseAbs().maxCoeff() < 1e-10);

  const SymOperator constant = limit_noninteracting(2, 2, 2.3, {0.7, 0.7, 0.7});
  const SymOperator uniform2 = limit_uniform(2, 2);
  CHECK((constant.matrix - uniform2.matrix).cwiseAbs().maxCoeff() < 1e-10);

  // d = 1, eps = (0, 1), beta = 1, m = 1: entries I1/I0 and 1 - I1/I0
  const double beta = 1.0;
  const auto weight = [beta](double p0) { return std::exp(-beta * (1.0 - p0)); };
  const double i0 = simpson_01(weight);
  const double i1 = simpson_01([&](double p0) { return p0 * weight(p0); });
  const SymOperator limit = limit_noninteracting(1, 1, beta, {0.0, 1.0});
  CHECK(limit.matrix(0, 0).real() == doctest::Approx(i1 / i0).epsilon(1e-8));
  CHECK(limit.matrix(1, 1).real() == doctest::Approx(1.0 - i1 / i0).epsilon(1e-8));
  CHECK(limit.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-8));

  // beta -> 0 continuity
  const SymOperator near_zero = limit_noninteracting(2, 1, 1e-8, {0.0, 1.0});
  CHECK(trace_distance(near_zero.matrix, uniform.matrix) < 1e-6);
}

TEST_CASE("limit_noninteracting quadrature and Monte Carlo engines agree at d = 3") {
  const std::vector<double> eps{0.0, 1.0, 2.0, 3.0};
  const SymOperator quad = limit_noninteracting(1, 3, 0.7, eps);
  CHECK(quad.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-8));
  const McMomentEstimate mc = limit_noninteracting_mc(1, 3, 0.7, eps, 20000, 31);
  for (std::int64_t i = 0; i < quad.dim(); ++i) {
    const double dev = std::abs(mc.estimate.matrix(i, i) - quad.matrix(i, i));
    CHECK(dev <= 4.0 * mc.std_errors(i, i));
  }
}

TEST_CASE("limit_condensate") {
  const SymOperator one = limit_condensate(1, 2);
  CHECK(one.matrix(0, 0).real() == 1.0);

  const SymOperator three = limit_condensate(3, 1);
  CHECK(three.matrix(0, 0).real() == 1.0);
  CHECK(three.matrix.trace().real() == 1.0);

  // agrees with the compressed tensor power of the ground projector
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  const DenseOperator power = tensor_power(DenseOperator::make(1, 2, p0), 3);
  const EmbeddingIsometry j = embedding_isometry(3, 1);
  const Matrix compressed = j.columns.adjoint() * power.entries * j.columns;
  CHECK((three.matrix - compressed).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("mc moment estimates agree with the exact limits") {
  // uniform weight vs S_m
  const McMomentEstimate uniform = mc_estimate_moment(2, 1, DeFinettiWeight::uniform(), 100000, 5);
  const SymOperator s2 = limit_uniform(2, 1);
  for (std::int64_t r = 0; r < s2.dim(); ++r) {
    for (std::int64_t c = 0; c < s2.dim(); ++c) {
      const double dev = std::abs(uniform.estimate.matrix(r, c) - s2.matrix(r, c));
      CHECK(dev <= 3.0 * uniform.std_errors(r, c) + 1e-12);
    }
  }
  CHECK(uniform.trace_deviation < 1e-12);  // uniform weights keep unit trace exactly

  // boltzmann weight with V = 0 vs the quadrature limit
  Matrix t = Matrix::Zero(2, 2);
  t(1, 1) = 1.0;
  const McMomentEstimate boltzmann = mc_estimate_moment(
      1, 1, DeFinettiWeight::boltzmann(1.0, t, Matrix::Zero(4, 4)), 100000, 6);
  const SymOperator limit = limit_noninteracting(1, 1, 1.0, {0.0, 1.0});
  for (std::int64_t r = 0; r < limit.dim(); ++r) {
    for (std::int64_t c = 0; c < limit.dim(); ++c) {
      const double dev = std::abs(boltzmann.estimate.matrix(r, c) - limit.matrix(r, c));
      CHECK(dev <= 3.0 * boltzmann.std_errors(r, c) + 1e-10);
    }
  }
  CHECK(boltzmann.z_estimate > 0.0);
  CHECK(boltzmann.bias_scale < 1e-3);
}

TEST_CASE("phase averages keep only matched occupation profiles") {
  const PhaseAverageReport one = phase_average_exact(1, 2, {{0.2, 0.3, 0.5}});
  CHECK(one.max_deviation < 1e-12);
  CHECK(one.block_diagonal);

  const PhaseAverageReport two = phase_average_exact(2, 1, {{0.5, 0.5}, {0.25, 0.75}});
  CHECK(two.max_deviation < 1e-10);
  CHECK(two.block_diagonal);

  const PhaseAverageReport three = phase_average_exact(3, 1, {{0.4, 0.6}});
  CHECK(three.max_deviation < 1e-10);
  CHECK(three.block_diagonal);

  CHECK_THROWS_AS(phase_average_exact(5, 1, {{0.5, 0.5}}), CapacityError);
}

TEST_CASE("free energy basics") {
  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = 1.0;

  // the flat density has zero entropy term and mean energy as value
  const auto flat = [](const SimplexPhasePoint&) { return 1.0; };
  const FreeEnergyEstimate zero_h =
      free_energy(flat, 2.0, Matrix::Zero(2, 2), 1, 20000, 3);
  CHECK(zero_h.value == 0.0);
  CHECK(zero_h.normalization == 1.0);

  // a constant shift of H moves the functional by exactly that constant
  const FreeEnergyEstimate base = free_energy(flat, 2.0, h, 1, 20000, 3);
  const FreeEnergyEstimate shifted =
      free_energy(flat, 2.0, h + 0.7 * Matrix::Identity(2, 2), 1, 20000, 3);
  CHECK(shifted.value - base.value == doctest::Approx(0.7).epsilon(1e-11));

  CHECK_THROWS_AS(free_energy(flat, 0.0, h, 1, 1000, 3), ValidationError);

  const auto negative = [](const SimplexPhasePoint& point) { return point.p[0] - 0.5; };
  CHECK_THROWS_AS(free_energy(negative, 1.0, h, 1, 1000, 3), NumericalError);

  const auto unnormalized = [](const SimplexPhasePoint&) { return 2.0; };
  CHECK_THROWS_AS(free_energy(unnormalized, 1.0, h, 1, 1000, 3), ValidationError);
}
