#include "bosegas/symspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bosegas/errors.hpp"

namespace bosegas {

namespace {

void check_single_particle(const Matrix& t, const char* name) {
  if (t.rows() != t.cols() || t.rows() < 1) {
    throw ValidationError(std::string(name) + " must be a square single-particle matrix");
  }
  const double scale = std::max(t.cwiseAbs().maxCoeff(), 1.0);
  if ((t - t.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw ValidationError(std::string(name) + " must be Hermitian");
  }
}

}  // namespace

SymOperator SymOperator::make(int n, int d, Matrix matrix) {
  const std::int64_t dim = sym_dim(n, d);
  if (matrix.rows() != dim || matrix.cols() != dim) {
    throw ValidationError("sym operator side " + std::to_string(matrix.rows()) +
                          " does not match sym_dim(" + std::to_string(n) + "," +
                          std::to_string(d) + ") = " + std::to_string(dim));
  }
  SymOperator op;
  op.n = n;
  op.d = d;
  op.matrix = std::move(matrix);
  return op;
}

SymOperator SymOperator::identity(int n, int d) {
  const std::int64_t dim = sym_dim(n, d);
  SymOperator op = make(n, d, Matrix::Identity(dim, dim));
  op.hermitian = true;
  return op;
}

SymOperator SymOperator::diagonal(int n, int d, const RealVector& diag) {
  const std::int64_t dim = sym_dim(n, d);
  if (diag.size() != dim) throw ValidationError("diagonal length does not match sym_dim");
  Matrix m = Matrix::Zero(dim, dim);
  m.diagonal() = diag.cast<Complex>();
  SymOperator op = make(n, d, std::move(m));
  op.hermitian = true;
  return op;
}

void SymOperator::mark_hermitian(double tol) {
  const double scale = matrix.cwiseAbs().maxCoeff();
  const double dev = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (scale > 0.0 && dev > tol * scale) {
    throw ValidationError("sym operator is not Hermitian: deviation " + std::to_string(dev));
  }
  hermitian = true;
}

Vector basis_vector(const OccupationVector& occ, int d) {
  if (occ.levels() != d + 1) throw ValidationError("basis_vector: occupation has wrong level count");
  const int n = occ.total;
  if (n < 1) throw ValidationError("basis_vector: needs at least one particle");
  const std::int64_t dim = pow_ll(d + 1, n);
  if (dim > capacity().max_tensor_dim) {
    throw CapacityError("basis_vector: tensor dimension " + std::to_string(dim) + " too large");
  }

  // Sum over the distinct arrangements of the level word, each with
  // amplitude 1/sqrt(multinomial).
  std::vector<int> word;
  word.reserve(static_cast<std::size_t>(n));
  for (int level = 0; level <= d; ++level) {
    for (int c = 0; c < occ[level]; ++c) word.push_back(level);
  }
  const double amplitude = 1.0 / std::sqrt(static_cast<double>(multinomial(n, occ)));

  Vector psi = Vector::Zero(dim);
  std::sort(word.begin(), word.end());
  do {
    psi(digits_index(word, d + 1)) = amplitude;
  } while (std::next_permutation(word.begin(), word.end()));
  return psi;
}

EmbeddingIsometry embedding_isometry(int n, int d) {
  const SymBasis basis(n, d);
  const std::int64_t dim = pow_ll(d + 1, n);
  if (dim > capacity().max_tensor_dim) {
    throw CapacityError("embedding_isometry: tensor dimension " + std::to_string(dim) +
                        " too large");
  }
  EmbeddingIsometry j;
  j.n = n;
  j.d = d;
  j.columns = Matrix::Zero(dim, basis.size());
  for (std::int64_t k = 0; k < basis.size(); ++k) {
    j.columns.col(k) = basis_vector(basis.state(k), d);
  }
  return j;
}

SymOperator compress(const EmbeddingIsometry& j, const DenseOperator& a) {
  if (a.dim() != j.columns.rows()) throw ValidationError("compress: dimension mismatch");
  return SymOperator::make(j.n, j.d, j.columns.adjoint() * a.entries * j.columns);
}

DenseOperator embed(const EmbeddingIsometry& j, const SymOperator& a) {
  if (a.dim() != j.columns.cols()) throw ValidationError("embed: dimension mismatch");
  return DenseOperator::make(j.n, j.d + 1, j.columns * a.matrix * j.columns.adjoint());
}

SymOperator lift_one_body(const Matrix& t, int n) {
  check_single_particle(t, "one-body operator");
  const int d = static_cast<int>(t.rows()) - 1;
  const SymBasis basis(n, d);
  Matrix h = Matrix::Zero(basis.size(), basis.size());

  // dGamma(T) = sum_{jk} T_jk adag_j a_k in occupation coordinates.
  std::vector<int> scratch;
  for (std::int64_t col = 0; col < basis.size(); ++col) {
    const OccupationVector& occ = basis.state(col);
    for (int k = 0; k <= d; ++k) {
      if (occ[k] == 0) continue;
      for (int j = 0; j <= d; ++j) {
        if (t(j, k) == Complex(0.0)) continue;
        if (j == k) {
          h(col, col) += t(k, k) * static_cast<double>(occ[k]);
          continue;
        }
        scratch = occ.counts;
        scratch[static_cast<std::size_t>(k)] -= 1;
        scratch[static_cast<std::size_t>(j)] += 1;
        const double amp = std::sqrt(static_cast<double>(occ[k]) *
                                     (static_cast<double>(occ[j]) + 1.0));
        h(basis.ordinal(OccupationVector(scratch)), col) += t(j, k) * amp;
      }
    }
  }
  SymOperator op = SymOperator::make(n, d, std::move(h));
  op.mark_hermitian(1e-10);
  return op;
}

Matrix pair_kernel(const Matrix& t, const Matrix& v) {
  check_single_particle(t, "one-body operator");
  const std::int64_t q = t.rows();
  if (v.rows() != q * q || v.cols() != q * q) {
    throw ValidationError("pair kernel: V must act on the two-particle space");
  }
  const Matrix id = Matrix::Identity(q, q);
  Matrix w = Matrix::Zero(q * q, q * q);
  for (std::int64_t a = 0; a < q; ++a)
    for (std::int64_t b = 0; b < q; ++b)
      for (std::int64_t c = 0; c < q; ++c)
        for (std::int64_t e = 0; e < q; ++e) {
          w(a * q + b, c * q + e) = t(a, c) * id(b, e) + id(a, c) * t(b, e) + v(a * q + b, c * q + e);
        }
  return w;
}

SymOperator lift_two_body_meanfield(const Matrix& t, const Matrix& v, int n, double coupling) {
  if (n < 2) throw ValidationError("two-body lift needs n >= 2");
  check_single_particle(t, "one-body operator");
  const int q = static_cast<int>(t.rows());
  const int d = q - 1;
  if (v.rows() != q * q || v.cols() != q * q) {
    throw ValidationError("two-body operator must act on the two-particle space");
  }
  const double vscale = std::max(v.cwiseAbs().maxCoeff(), 1.0);
  if ((v - v.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * vscale) {
    throw ValidationError("two-body operator must be Hermitian");
  }
  // SWAP-exchange symmetry of the interaction
  Matrix swapped(q * q, q * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        for (int e = 0; e < q; ++e) {
          swapped(a * q + b, c * q + e) = v(b * q + a, e * q + c);
        }
  if ((v - swapped).cwiseAbs().maxCoeff() > 1e-10 * vscale) {
    throw ValidationError("two-body operator must commute with SWAP");
  }
  if (coupling < 0) coupling = 1.0 / (n - 1);

  const SymBasis basis(n, d);
  Matrix h = lift_one_body(t, n).matrix;

  // sum_{i<j} V_ij = (1/2) sum_{pqrs} <pq|V|rs> adag_p adag_q a_s a_r.
  std::vector<int> scratch;
  for (std::int64_t col = 0; col < basis.size(); ++col) {
    const OccupationVector& occ = basis.state(col);
    for (int r = 0; r <= d; ++r) {
      if (occ[r] == 0) continue;
      for (int s = 0; s <= d; ++s) {
        // a_s a_r |occ>: the second lowering sees occ - e_r
        const int ns = occ[s] - (s == r ? 1 : 0);
        if (ns < 1) continue;
        const double lower = std::sqrt(static_cast<double>(occ[r]) * static_cast<double>(ns));
        scratch = occ.counts;
        scratch[static_cast<std::size_t>(r)] -= 1;
        scratch[static_cast<std::size_t>(s)] -= 1;
        for (int p = 0; p <= d; ++p) {
          for (int qq = 0; qq <= d; ++qq) {
            const Complex vpq = v(p * q + qq, r * q + s);
            if (vpq == Complex(0.0)) continue;
            // adag_p adag_q on the doubly lowered state
            const int nq = scratch[static_cast<std::size_t>(qq)];
            const int np = scratch[static_cast<std::size_t>(p)] + (p == qq ? 1 : 0);
            const double raise = std::sqrt((static_cast<double>(nq) + 1.0) *
                                           (static_cast<double>(np) + 1.0));
            scratch[static_cast<std::size_t>(qq)] += 1;
            scratch[static_cast<std::size_t>(p)] += 1;
            const std::int64_t row = basis.ordinal(OccupationVector(scratch));
            scratch[static_cast<std::size_t>(qq)] -= 1;
            scratch[static_cast<std::size_t>(p)] -= 1;
            h(row, col) += 0.5 * coupling * vpq * lower * raise;
          }
        }
      }
    }
  }
  SymOperator op = SymOperator::make(n, d, std::move(h));
  op.mark_hermitian(1e-10);
  return op;
}

}  // namespace bosegas
