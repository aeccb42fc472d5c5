#ifndef BOSEGAS_DEFINETTI_HPP
#define BOSEGAS_DEFINETTI_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "bosegas/occupation.hpp"
#include "bosegas/rational.hpp"
#include "bosegas/symspace.hpp"
#include "bosegas/types.hpp"

namespace bosegas {

// A point (p, theta) on simplex x torus: squared moduli and phases of a
// unit vector in C^(d+1).
struct SimplexPhasePoint {
  std::vector<double> p;
  std::vector<double> theta;

  int d() const { return static_cast<int>(p.size()) - 1; }
  void validate(double tol = 1e-12) const;
};

enum class WeightForm { uniform, boltzmann };

// Weight of the de Finetti mixture over (p, theta).  The boltzmann form uses
// the pair energy Tr(T P_v) + Tr(V (P_v ox P_v))/2.
struct DeFinettiWeight {
  WeightForm form = WeightForm::uniform;
  double beta = 0.0;
  Matrix t;  // (d+1)x(d+1)
  Matrix v;  // (d+1)^2 x (d+1)^2

  static DeFinettiWeight uniform();
  static DeFinettiWeight boltzmann(double beta, Matrix t, Matrix v);

  double energy(const Vector& vec) const;
  double log_weight(const Vector& vec) const;
};

// v(p, theta) = sum_j e^(i theta_j) sqrt(p_j) e_j; always a unit vector.
Vector v_map(const SimplexPhasePoint& point);

// Moment of the uniform simplex measure: the exact value of
// int prod_i p_i^(m_i) over the normalized d-simplex, d! prod(m_i!)/(m+d)!.
Rational dirichlet_moment(const OccupationVector& occ_m, int d);

// Exact diagonal coefficients of the uniform-ensemble limit S_m, canonical
// enumeration order.
std::vector<Rational> limit_uniform_exact(int m, int d);

// S_m as a density on the m-particle symmetric subspace.
SymOperator limit_uniform(int m, int d);

// Limit of the noninteracting Gibbs reductions under beta/n scaling:
// coefficients are simplex integrals of p-monomials against the Boltzmann
// density exp(-beta sum eps_i p_i), evaluated by adaptive quadrature (d <= 4)
// or Monte Carlo beyond that (limit_noninteracting_mc carries the error bars).
SymOperator limit_noninteracting(int m, int d, double beta, const std::vector<double>& epsilons,
                                 double rel_tol = 1e-8);

struct McMomentEstimate;
McMomentEstimate limit_noninteracting_mc(int m, int d, double beta,
                                         const std::vector<double>& epsilons,
                                         std::size_t samples, std::uint64_t seed);

// Fixed-temperature limit with a unique ground level: the condensate
// projector P_(m,0,...,0).  The caller asserts the spectral gap.
SymOperator limit_condensate(int m, int d);

// Monte Carlo moment estimate over simplex x torus.
struct McMomentEstimate {
  SymOperator estimate;      // trace-renormalized
  RealMatrix std_errors;     // per entry, for the pre-normalization ratio
  double z_estimate = 0.0;   // mean weight (Z_beta for the boltzmann form)
  double z_std_error = 0.0;
  double trace_deviation = 0.0;  // |trace - 1| before renormalization
  double bias_scale = 0.0;       // O(1/N) self-normalization bias magnitude
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

// Samples p ~ uniform simplex, theta ~ uniform torus, and averages
// P_v^(ox m) in occupation coordinates with the given mixture weight
// (self-normalized for the boltzmann form).  Deterministic for fixed
// (seed, samples) independent of the worker count; workers = 0 reads the
// BOSEGAS_WORKERS environment variable (default 1).
McMomentEstimate mc_estimate_moment(int m, int d, const DeFinettiWeight& weight,
                                    std::size_t samples, std::uint64_t seed, int workers = 0);

// Exact phase average of P_v^(ox m) at fixed p: keeps exactly the index
// pairs with matching occupation profiles.  Verifies the result against
// sum_m C(m, occ) prod p^occ P_occ at the given p points.
struct PhaseAverageReport {
  int m = 0;
  int d = 0;
  std::vector<double> per_point_deviation;
  double max_deviation = 0.0;
  bool block_diagonal = false;  // no coupling across occupation sectors
};
PhaseAverageReport phase_average_exact(int m, int d,
                                       const std::vector<std::vector<double>>& p_points);

// Monte Carlo estimate of the free-energy functional
//   F[f] = int <v, H v> f + (1/beta) int f ln f
// over simplex x torus.  H is a single-particle Hamiltonian.  f must be
// normalized under the same Monte Carlo quadrature, i.e. its sample mean
// over the (seed, samples) stream must be 1 to 1e-6; divide by a mean
// computed on a matching stream first (see variational_check).
struct FreeEnergyEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double normalization = 0.0;  // Monte Carlo mean of f (should be 1)
  std::size_t samples = 0;
};
FreeEnergyEstimate free_energy(const std::function<double(const SimplexPhasePoint&)>& density,
                               double beta, const Matrix& h, int d, std::size_t samples,
                               std::uint64_t seed);

// One (p, theta) draw from the uniform measure; draw i of a fixed seed is
// stable across partitionings.
SimplexPhasePoint sample_uniform_point(int d, std::uint64_t seed, std::uint64_t index);

}  // namespace bosegas

#endif
