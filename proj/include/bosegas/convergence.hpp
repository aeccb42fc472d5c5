#ifndef BOSEGAS_CONVERGENCE_HPP
#define BOSEGAS_CONVERGENCE_HPP

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "bosegas/definetti.hpp"
#include "bosegas/ensembles.hpp"
#include "bosegas/symspace.hpp"
#include "bosegas/types.hpp"

namespace bosegas {

enum class LimitKind { uniform, noninteracting, condensate, meanfield };

std::string to_string(LimitKind kind);
LimitKind limit_kind_from_string(const std::string& s);

struct SweepRow {
  int n = 0;
  int m = 0;
  double beta = 0.0;
  bool scaled = false;
  double trace_distance = 0.0;
  double sigma_ref = 0.0;  // 1-sigma trace-distance noise scale of an MC reference
  double wall_time_s = 0.0;
  bool skipped = false;  // capacity exceeded at this n
};

struct SweepResult {
  std::vector<SweepRow> rows;
  EnsembleSpec spec;
  LimitKind limit = LimitKind::uniform;
  int m = 0;
  std::uint64_t seed = 0;
  std::size_t mc_samples = 0;
  bool truncated = false;  // cancelled before all rows were computed
};

// For each n in n_list, builds the finite-n ensemble, reduces it to m
// particles, and records the trace distance to the limit object.  The
// meanfield limit is a Monte Carlo reference with the declared sample count
// and seed; its error bars feed sigma_ref.  A set cancel flag stops the
// sweep between rows and marks the result truncated.
SweepResult sweep_to_limit(const EnsembleSpec& spec, LimitKind limit, int m,
                           const std::vector<int>& n_list, std::size_t mc_samples = 0,
                           std::uint64_t seed = 0, const std::atomic<bool>* cancel = nullptr);

// CSV with the canonical column set, 17 significant digits.
std::string to_csv(const SweepResult& result);

// Deviation between the finite-n moment expression
//   n^(-j) {(H_n)^j Sigma_n}_{:m} / Tr(Sigma_n)
// and its limit 2^(-j) {W_(m+1,m+2) ... W_(m+2j-1,m+2j) S_(m+2j)}_{:m}.
struct ClaimDeviation {
  int n = 0;
  double deviation = 0.0;  // max-entry difference
  double wall_time_s = 0.0;
};

std::vector<ClaimDeviation> verify_claim(int j, int m, const std::vector<int>& n_list,
                                         const Matrix& t, const Matrix& v, int d);

// Truncation check of the exponential moment series at finite n: the partial
// sum through order J differs from the exact reduction by at most the
// analytic tail bound sum_{j>J} beta^j ||W||^j / j!.
struct SeriesCheck {
  int truncation_order = 0;
  double beta = 0.0;
  double deviation = 0.0;        // spectral norm of (truncated - exact)
  double remainder_bound = 0.0;
  SymOperator truncated;
  SymOperator exact;
};

SeriesCheck verify_series(int truncation_order, double beta, int n, int m, const Matrix& t,
                          const Matrix& v, int d);

// Variational check of the free-energy functional: the Boltzmann density for
// a single-particle Hamiltonian h should not exceed the functional value of
// any normalized perturbation, and its value should reproduce
// -(1/beta) ln Z_beta.
struct VariationalTrial {
  double value = 0.0;
  double std_error = 0.0;
  bool consistent = false;  // F[f*] <= F[trial] within combined error bars
};

struct VariationalReport {
  FreeEnergyEstimate minimizer;
  double z_estimate = 0.0;       // Monte Carlo Z on the sample stream
  double z_reference = 0.0;      // quadrature Z over the spectrum of h
  double reference_value = 0.0;  // -(1/beta) ln z_reference
  double sigma_factor = 3.0;
  std::vector<VariationalTrial> trials;
  bool minimizer_matches_reference = false;
  bool all_trials_consistent = false;
};

VariationalReport variational_check(double beta, const Matrix& h, int d, int trials,
                                    std::size_t samples, std::uint64_t seed,
                                    double sigma_factor = 3.0);

}  // namespace bosegas

#endif
