#ifndef BOSEGAS_REDUCTION_HPP
#define BOSEGAS_REDUCTION_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "bosegas/occupation.hpp"
#include "bosegas/operators.hpp"
#include "bosegas/rational.hpp"
#include "bosegas/symspace.hpp"
#include "bosegas/types.hpp"

namespace bosegas {

// Exact reduction weights w(occ_n, occ_m) = prod_i C(n_i, m_i) / C(n, m):
// the coefficient of P_m in the m-particle reduction of P_n.  Each row sums
// to exactly 1.
struct ReductionWeights {
  int n = 0;
  int m = 0;
  int d = 0;
  // table[row][col]: row indexed by the level-n ordinal, col by the level-m
  // ordinal, both in canonical enumeration order.
  std::vector<std::vector<Rational>> table;
};

ReductionWeights reduction_weights(int n, int m, int d);

// Exact weight row for a single occupation vector.
std::vector<Rational> reduction_weight_row(const OccupationVector& occ, int m);

// m-particle reduction of the occupation projector P_occ: a diagonal density
// on the m-particle symmetric subspace.
SymOperator reduce_projector(const OccupationVector& occ, int m);

// m-particle reduction of a diagonal ensemble given by a probability vector
// over the level-n occupation basis.  Stable for large n (the binomial
// ratios are evaluated as falling-factorial products in double precision).
SymOperator reduce_diagonal_ensemble(const RealVector& weights, int n, int d, int m);

// Exact-rational variant for diagonal ensembles with rational weights.
std::vector<Rational> reduce_diagonal_exact(const std::vector<Rational>& weights, int n, int d,
                                            int m);

// The falling-factorial ratio f_n(p) for the target occupation occ_m: a
// gated product that converges uniformly to prod_i p_i^{m_i} on the simplex.
double fn_weight(std::span<const double> p, const OccupationVector& occ_m, std::int64_t n);

// Partial trace over the last (factors - m) tensor factors.  Linear; works
// for any operator.  Preserves the total trace.
DenseOperator reduce_full(const DenseOperator& a, int m);
DensityOperator reduce_full(const DensityOperator& rho, int m);

// Partial trace computed entirely in occupation coordinates via the
// branching decomposition of the occupation basis.  Agrees with reduce_full
// after embedding; reproduces the exact combinatorial formula on diagonal
// input.  Linear; works for any operator on the n-particle sector.
SymOperator reduce_sym(const SymOperator& a, int m);

}  // namespace bosegas

#endif
