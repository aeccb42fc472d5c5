#include <doctest.h>

#include <vector>

#include "bosegas/errors.hpp"
#include "bosegas/reduction.hpp"
#include "oracles.hpp"

using namespace bosegas;
using bosegas::testing::random_hermitian;

namespace {

// random density on the n-particle sector
SymOperator random_sym_density(int n, int d, std::uint64_t seed) {
  const std::int64_t dim = sym_dim(n, d);
  const Matrix h = random_hermitian(dim, seed);
  const Matrix psd = h * h.adjoint();
  SymOperator rho = SymOperator::make(n, d, psd / psd.trace().real());
  rho.hermitian = true;
  return rho;
}

}  // namespace

TEST_CASE("reduction weights are exact probabilities") {
  for (const auto& [n, d] : {std::pair{3, 1}, {5, 1}, {4, 2}}) {
    for (int m = 1; m <= n; ++m) {
      const ReductionWeights w = reduction_weights(n, m, d);
      for (const auto& row : w.table) {
        Rational sum(0);
        for (const Rational& entry : row) {
          CHECK(entry >= Rational(0));
          sum += entry;
        }
        CHECK(sum == Rational(1));
      }
    }
  }
  // zero weight whenever the target exceeds the source occupation
  const std::vector<Rational> row = reduction_weight_row(OccupationVector({3, 0}), 2);
  CHECK(row[1] == Rational(0));  // (1,1) needs a particle in level 1
  CHECK(row[2] == Rational(0));
}

TEST_CASE("reduce_projector examples") {
  // product state e_0 ox e_0 reduces to the pure e_0
  const SymOperator pure = reduce_projector(OccupationVector({2, 0}), 1);
  CHECK(pure.matrix(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pure.matrix(1, 1).real() == doctest::Approx(0.0).epsilon(1e-15));

  // full-tensor oracle for the (1,1) reduction
  const Vector bell = basis_vector(OccupationVector({1, 1}), 1);
  const Matrix projector = bell * bell.adjoint();
  const DenseOperator reduced_full =
      reduce_full(DenseOperator::make(2, 2, projector), 1);
  const SymOperator reduced = reduce_projector(OccupationVector({1, 1}), 1);
  // level-1 occupation basis is the standard basis, so entries compare directly
  CHECK((reduced.matrix - reduced_full.entries).cwiseAbs().maxCoeff() < 1e-12);

  // condensed states stay condensed
  const SymOperator condensed = reduce_projector(OccupationVector({5, 0, 0}), 3);
  CHECK(condensed.matrix(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(condensed.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(reduce_projector(OccupationVector({1, 1}), 3), ValidationError);
}

TEST_CASE("reduce_diagonal_ensemble") {
  const int n = 2, d = 1;
  // point mass reproduces the projector reduction
  RealVector point = RealVector::Zero(3);
  point(1) = 1.0;
  const SymOperator via_point = reduce_diagonal_ensemble(point, n, d, 1);
  const SymOperator via_projector = reduce_projector(OccupationVector({1, 1}), 1);
  CHECK((via_point.matrix - via_projector.matrix).cwiseAbs().maxCoeff() < 1e-15);

  // uniform weights over the n = 2 sector
  const RealVector uniform = RealVector::Constant(3, 1.0 / 3.0);
  const SymOperator reduced = reduce_diagonal_ensemble(uniform, n, d, 1);
  CHECK(reduced.matrix(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(reduced.matrix(1, 1).real() == doctest::Approx(0.5).epsilon(1e-14));

  // m = n is the identity reduction
  RealVector w(3);
  w << 0.2, 0.5, 0.3;
  const SymOperator same = reduce_diagonal_ensemble(w, n, d, 2);
  for (int i = 0; i < 3; ++i) CHECK(same.matrix(i, i).real() == doctest::Approx(w(i)).epsilon(1e-14));

  RealVector bad(3);
  bad << 0.5, 0.5, 0.5;
  CHECK_THROWS_AS(reduce_diagonal_ensemble(bad, n, d, 1), ValidationError);
}

TEST_CASE("fn_weight") {
  const OccupationVector zero({0, 0});
  const std::vector<double> p{0.3, 0.7};
  CHECK(fn_weight(p, zero, 10) == 1.0);

  // indicator gate
  const OccupationVector two({2, 0});
  const std::vector<double> tiny{0.05, 0.95};
  CHECK(fn_weight(tiny, two, 10) == 0.0);  // p_0 = 0.05 < (2-1)/10

  // uniform convergence to the monomial on a grid
  for (int m0 = 0; m0 <= 2; ++m0) {
    for (int m1 = 0; m1 + m0 <= 2 && m1 <= 2; ++m1) {
      const OccupationVector occ({m0, m1});
      const int m = occ.total;
      for (const std::int64_t n : {50, 100, 200, 400}) {
        double sup = 0.0;
        for (int grid = 0; grid <= 40; ++grid) {
          const double p0 = grid / 40.0;
          const std::vector<double> point{p0, 1.0 - p0};
          double monomial = 1.0;
          for (int rep = 0; rep < m0; ++rep) monomial *= p0;
          for (int rep = 0; rep < m1; ++rep) monomial *= 1.0 - p0;
          sup = std::max(sup, std::abs(fn_weight(point, occ, n) - monomial));
        }
        CHECK(sup <= 10.0 * m * m / static_cast<double>(n) + 1e-12);
      }
    }
  }

  // at lattice points the gated ratio is the exact binomial weight
  const OccupationVector occ_n({7, 5});
  const OccupationVector occ_m({2, 1});
  const std::int64_t n = occ_n.total;
  const std::vector<double> lattice{7.0 / 12.0, 5.0 / 12.0};
  const double lhs = static_cast<double>(multinomial(3, occ_m)) * fn_weight(lattice, occ_m, n);
  const double rhs = static_cast<double>(binomial(7, 2)) * static_cast<double>(binomial(5, 1)) /
                     static_cast<double>(binomial(12, 3));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

  CHECK_THROWS_AS(fn_weight(std::vector<double>{0.5, 0.6}, zero, 5), ValidationError);
}

TEST_CASE("reduce_full") {
  // product states reduce to smaller products
  Matrix rho1 = Matrix::Zero(2, 2);
  rho1(0, 0) = 0.7;
  rho1(1, 1) = 0.3;
  const DenseOperator rho = DenseOperator::make(1, 2, rho1);
  const DenseOperator cubed = tensor_power(rho, 3);
  const DenseOperator back = reduce_full(cubed, 2);
  const DenseOperator squared = tensor_power(rho, 2);
  CHECK((back.entries - squared.entries).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(back.entries.trace().real() == doctest::Approx(1.0).epsilon(1e-12));

  // m = n is a no-op
  const DenseOperator same = reduce_full(cubed, 3);
  CHECK((same.entries - cubed.entries).cwiseAbs().maxCoeff() == 0.0);

  // normalized two-particle symmetrizer reduces to the maximally mixed state
  const DenseOperator sigma = symmetrize(2, 1);
  const DenseOperator half = reduce_full(
      DenseOperator::make(2, 2, sigma.entries / sigma.entries.trace().real()), 1);
  CHECK(half.entries(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(half.entries(1, 1).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(half.entries(0, 1)) < 1e-14);

  CHECK_THROWS_AS(reduce_full(rho, 2), ValidationError);
}

TEST_CASE("reduce_sym matches the full-tensor partial trace") {
  for (const auto& [n, d] : {std::pair{3, 1}, {4, 1}, {5, 1}, {3, 2}, {4, 2}}) {
    const SymOperator rho = random_sym_density(n, d, 400 + static_cast<std::uint64_t>(10 * n + d));
    const EmbeddingIsometry j_n = embedding_isometry(n, d);
    const DenseOperator full = embed(j_n, rho);
    for (int m = 1; m < n; ++m) {
      const SymOperator via_sym = reduce_sym(rho, m);
      const EmbeddingIsometry j_m = embedding_isometry(m, d);
      const Matrix via_full =
          j_m.columns.adjoint() * reduce_full(full, m).entries * j_m.columns;
      CHECK((via_sym.matrix - via_full).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(via_sym.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("reduce_sym on diagonal input reproduces the combinatorial formula") {
  const int n = 5, d = 2;
  const SymBasis basis(n, d);
  RealVector w(basis.size());
  for (std::int64_t i = 0; i < basis.size(); ++i) w(i) = static_cast<double>(i + 1);
  w /= w.sum();
  const SymOperator diag = SymOperator::diagonal(n, d, w);
  for (int m = 1; m <= n; ++m) {
    const SymOperator a = reduce_sym(diag, m);
    const SymOperator b = reduce_diagonal_ensemble(w, n, d, m);
    CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("reduction chain rule") {
  const int n = 5, d = 1;
  const SymOperator rho = random_sym_density(n, d, 555);
  const SymOperator direct = reduce_sym(rho, 2);
  const SymOperator chained = reduce_sym(reduce_sym(rho, 4), 2);
  CHECK((direct.matrix - chained.matrix).cwiseAbs().maxCoeff() < 1e-12);

  const EmbeddingIsometry j_n = embedding_isometry(n, d);
  const DenseOperator full = embed(j_n, rho);
  const DenseOperator direct_full = reduce_full(full, 2);
  const DenseOperator chained_full = reduce_full(reduce_full(full, 4), 2);
  CHECK((direct_full.entries - chained_full.entries).cwiseAbs().maxCoeff() < 1e-12);
}
