#include "bosegas/operators.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "bosegas/errors.hpp"
#include "bosegas/occupation.hpp"

namespace bosegas {

namespace {

void check_tensor_capacity(std::int64_t dim) {
  if (dim > capacity().max_tensor_dim) {
    throw CapacityError("tensor dimension " + std::to_string(dim) + " exceeds limit " +
                        std::to_string(capacity().max_tensor_dim));
  }
}

}  // namespace

std::int64_t pow_ll(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > INT64_MAX / base) throw OverflowError("tensor dimension overflow");
    r *= base;
  }
  return r;
}

std::vector<int> index_digits(std::int64_t index, int factors, int local_dim) {
  std::vector<int> digits(static_cast<std::size_t>(factors));
  for (int k = factors - 1; k >= 0; --k) {
    digits[static_cast<std::size_t>(k)] = static_cast<int>(index % local_dim);
    index /= local_dim;
  }
  return digits;
}

std::int64_t digits_index(const std::vector<int>& digits, int local_dim) {
  std::int64_t index = 0;
  for (int digit : digits) index = index * local_dim + digit;
  return index;
}

DenseOperator DenseOperator::make(int factors, int local_dim, Matrix entries) {
  if (factors < 1 || local_dim < 1) throw ValidationError("operator needs factors, local_dim >= 1");
  const std::int64_t dim = pow_ll(local_dim, factors);
  if (entries.rows() != dim || entries.cols() != dim) {
    throw ValidationError("operator entries are " + std::to_string(entries.rows()) + "x" +
                          std::to_string(entries.cols()) + ", expected side " + std::to_string(dim));
  }
  DenseOperator op;
  op.factors = factors;
  op.local_dim = local_dim;
  op.entries = std::move(entries);
  return op;
}

DenseOperator DenseOperator::identity(int factors, int local_dim) {
  const std::int64_t dim = pow_ll(local_dim, factors);
  check_tensor_capacity(dim);
  DenseOperator op = make(factors, local_dim, Matrix::Identity(dim, dim));
  op.hermitian = true;
  return op;
}

void DenseOperator::mark_hermitian(double tol) {
  const double scale = entries.cwiseAbs().maxCoeff();
  const double dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (scale > 0.0 && dev > tol * scale) {
    throw ValidationError("operator is not Hermitian: deviation " + std::to_string(dev));
  }
  hermitian = true;
}

DensityOperator DensityOperator::make(DenseOperator op, double tolerance) {
  if (tolerance < 0) throw ValidationError("density tolerance must be nonnegative");
  const double trace_dev = std::abs(op.entries.trace() - Complex(1.0));
  if (trace_dev > tolerance) {
    throw ValidationError("density trace deviates from 1 by " + std::to_string(trace_dev));
  }
  op.mark_hermitian(tolerance);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.entries, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tolerance) {
    throw ValidationError("density has negative eigenvalue " + std::to_string(min_eig));
  }
  DensityOperator rho;
  rho.op = std::move(op);
  rho.tolerance = tolerance;
  return rho;
}

DenseOperator permutation_operator(const std::vector<int>& pi, int n, int d) {
  if (static_cast<int>(pi.size()) != n) throw ValidationError("permutation has wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : pi) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw ValidationError("not a permutation of 0..n-1");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  const std::int64_t dim = pow_ll(d + 1, n);
  check_tensor_capacity(dim);

  Matrix u = Matrix::Zero(dim, dim);
  std::vector<int> out(static_cast<std::size_t>(n));
  for (std::int64_t col = 0; col < dim; ++col) {
    const std::vector<int> in = index_digits(col, n, d + 1);
    for (int k = 0; k < n; ++k) {
      out[static_cast<std::size_t>(k)] = in[static_cast<std::size_t>(pi[static_cast<std::size_t>(k)])];
    }
    u(digits_index(out, d + 1), col) = 1.0;
  }
  return DenseOperator::make(n, d + 1, std::move(u));
}

DenseOperator symmetrize(int n, int d) {
  if (n < 1) throw ValidationError("symmetrize: n >= 1 required");
  if (n > 8) {
    throw CapacityError("symmetrize: permutation sum limited to n <= 8, got n = " +
                        std::to_string(n));
  }
  const std::int64_t dim = pow_ll(d + 1, n);
  check_tensor_capacity(dim);

  Matrix sum = Matrix::Zero(dim, dim);
  std::vector<int> pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 0);
  std::vector<int> out(static_cast<std::size_t>(n));
  std::uint64_t n_perms = 0;
  do {
    for (std::int64_t col = 0; col < dim; ++col) {
      const std::vector<int> in = index_digits(col, n, d + 1);
      for (int k = 0; k < n; ++k) {
        out[static_cast<std::size_t>(k)] =
            in[static_cast<std::size_t>(pi[static_cast<std::size_t>(k)])];
      }
      sum(digits_index(out, d + 1), col) += 1.0;
    }
    ++n_perms;
  } while (std::next_permutation(pi.begin(), pi.end()));

  sum /= static_cast<double>(n_perms);
  DenseOperator op = DenseOperator::make(n, d + 1, std::move(sum));
  op.hermitian = true;
  return op;
}

DenseOperator tensor_power(const DenseOperator& a, int k) {
  if (k < 1) throw ValidationError("tensor_power: k >= 1 required");
  const std::int64_t dim = pow_ll(a.dim(), k);
  check_tensor_capacity(dim);

  Matrix result = a.entries;
  for (int i = 1; i < k; ++i) {
    result = Eigen::kroneckerProduct(result, a.entries).eval();
  }
  DenseOperator out = DenseOperator::make(a.factors * k, a.local_dim, std::move(result));
  out.hermitian = a.hermitian;
  return out;
}

DenseOperator hermitian_exp(const DenseOperator& a, double s) {
  DenseOperator checked = a;
  checked.mark_hermitian();  // throws on non-Hermitian input
  if (s == 0.0) return DenseOperator::identity(a.factors, a.local_dim);

  Eigen::SelfAdjointEigenSolver<Matrix> solver(checked.entries);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian_exp: eigensolver failed");
  const RealVector exp_eigs = (s * solver.eigenvalues().array()).exp();
  Matrix result = solver.eigenvectors() * exp_eigs.asDiagonal() * solver.eigenvectors().adjoint();
  DenseOperator out = DenseOperator::make(a.factors, a.local_dim, std::move(result));
  out.hermitian = true;
  return out;
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw ValidationError("trace_distance: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho - sigma, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  return trace_distance(rho.op.entries, sigma.op.entries);
}

Matrix matrix_unit(int d, int j, int k) {
  if (j < 0 || j > d || k < 0 || k > d) throw ValidationError("matrix_unit: index out of range");
  Matrix q = Matrix::Zero(d + 1, d + 1);
  q(j, k) = 1.0;
  return q;
}

double spectral_norm_hermitian(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace bosegas
