#ifndef BOSEGAS_SYMSPACE_HPP
#define BOSEGAS_SYMSPACE_HPP

#include <cstdint>

#include "bosegas/occupation.hpp"
#include "bosegas/operators.hpp"
#include "bosegas/types.hpp"

namespace bosegas {

// Operator on the n-particle symmetric subspace, written in the occupation
// basis (canonical enumeration order, side sym_dim(n, d)).
struct SymOperator {
  int n = 0;
  int d = 0;
  Matrix matrix;
  bool hermitian = false;

  std::int64_t dim() const { return matrix.rows(); }

  static SymOperator make(int n, int d, Matrix matrix);
  static SymOperator identity(int n, int d);
  static SymOperator diagonal(int n, int d, const RealVector& diag);

  void mark_hermitian(double tol = 1e-12);
};

// The isometry J from the symmetric subspace into the full tensor space:
// columns are the occupation basis vectors in full tensor coordinates.
// J^dag J = I and J J^dag = symmetrize(n, d).
struct EmbeddingIsometry {
  int n = 0;
  int d = 0;
  Matrix columns;  // (d+1)^n x sym_dim(n, d)
};

// Occupation basis vector in full tensor coordinates: the normalized
// symmetrization of e_0^(ox n_0) ox ... ox e_d^(ox n_d).
Vector basis_vector(const OccupationVector& occ, int d);

EmbeddingIsometry embedding_isometry(int n, int d);

// Compress/embed between the two representations: J^dag A J and J A J^dag.
SymOperator compress(const EmbeddingIsometry& j, const DenseOperator& a);
DenseOperator embed(const EmbeddingIsometry& j, const SymOperator& a);

// Sum of single-particle operators T over all n particles, restricted to the
// symmetric subspace.  t must be a (d+1)x(d+1) Hermitian matrix.
SymOperator lift_one_body(const Matrix& t, int n);

// W = T ox I + I ox T + V on the two-particle space; the pairwise energy
// kernel of the mean-field Hamiltonian.
Matrix pair_kernel(const Matrix& t, const Matrix& v);

// H_n = sum_i T_i + coupling * sum_{i<j} V_ij restricted to the symmetric
// subspace.  coupling < 0 selects the mean-field default 1/(n-1).
// v must commute with SWAP on the two-particle space.
SymOperator lift_two_body_meanfield(const Matrix& t, const Matrix& v, int n,
                                    double coupling = -1.0);

}  // namespace bosegas

#endif
