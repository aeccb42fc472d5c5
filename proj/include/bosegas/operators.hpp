#ifndef BOSEGAS_OPERATORS_HPP
#define BOSEGAS_OPERATORS_HPP

#include <cstdint>
#include <vector>

#include "bosegas/types.hpp"

namespace bosegas {

// Dense operator on a tensor-power space (local_dim)^factors.  Factor 1 is
// the most significant digit of the basis index in base local_dim, so
// kron(A, B) puts A on factor 1.
struct DenseOperator {
  int factors = 1;
  int local_dim = 1;
  Matrix entries;
  bool hermitian = false;

  std::int64_t dim() const { return entries.rows(); }

  static DenseOperator make(int factors, int local_dim, Matrix entries);
  static DenseOperator identity(int factors, int local_dim);

  // Validates the Hermitian invariant (max|A - A^dag| <= tol * max|A|) and
  // sets the flag.
  void mark_hermitian(double tol = 1e-12);
};

// Density operator: trace one, Hermitian, positive semidefinite within tol.
struct DensityOperator {
  DenseOperator op;
  double tolerance = 1e-10;

  static DensityOperator make(DenseOperator op, double tolerance = 1e-10);
};

// Tensor index helpers (digit 0 = factor 1 = most significant).
std::int64_t pow_ll(std::int64_t base, int exp);
std::vector<int> index_digits(std::int64_t index, int factors, int local_dim);
std::int64_t digits_index(const std::vector<int>& digits, int local_dim);

// Unitary that sends x_1 ox ... ox x_n to x_{pi(1)} ox ... ox x_{pi(n)}.
// pi is 0-based: a bijection on {0, ..., n-1}.
DenseOperator permutation_operator(const std::vector<int>& pi, int n, int d);

// Symmetrizing projector: average of all n! permutation operators.
// Materializing the permutation sum is restricted to n <= 8.
DenseOperator symmetrize(int n, int d);

// A^(ox k) under the factor-1-most-significant convention.
DenseOperator tensor_power(const DenseOperator& a, int k);

// exp(s A) by Hermitian eigendecomposition.
DenseOperator hermitian_exp(const DenseOperator& a, double s);

// Half the sum of absolute eigenvalues of rho - sigma.
double trace_distance(const Matrix& rho, const Matrix& sigma);
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

// Rank-one matrix unit Q_jk = |e_j><e_k| on C^(d+1).
Matrix matrix_unit(int d, int j, int k);

// Largest |eigenvalue| of a Hermitian matrix.
double spectral_norm_hermitian(const Matrix& a);

}  // namespace bosegas

#endif
