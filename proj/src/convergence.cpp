#include "bosegas/convergence.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "bosegas/accumulator.hpp"
#include "bosegas/errors.hpp"
#include "bosegas/quadrature.hpp"
#include "bosegas/reduction.hpp"
#include "bosegas/rng.hpp"
#include "bosegas/serialization.hpp"

namespace bosegas {

std::string to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::uniform: return "uniform";
    case LimitKind::noninteracting: return "noninteracting";
    case LimitKind::condensate: return "condensate";
    case LimitKind::meanfield: return "meanfield";
  }
  return "?";
}

LimitKind limit_kind_from_string(const std::string& s) {
  if (s == "uniform") return LimitKind::uniform;
  if (s == "noninteracting") return LimitKind::noninteracting;
  if (s == "condensate") return LimitKind::condensate;
  if (s == "meanfield") return LimitKind::meanfield;
  throw ValidationError("unknown limit kind '" + s + "'");
}

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

SweepResult sweep_to_limit(const EnsembleSpec& spec, LimitKind limit, int m,
                           const std::vector<int>& n_list, std::size_t mc_samples,
                           std::uint64_t seed, const std::atomic<bool>* cancel) {
  for (int n : n_list) {
    if (n < m) throw ValidationError("sweep_to_limit: every n must be at least m");
  }

  SweepResult result;
  result.spec = spec;
  result.limit = limit;
  result.m = m;
  result.seed = seed;
  result.mc_samples = mc_samples;

  SymOperator reference;
  double sigma_ref = 0.0;
  switch (limit) {
    case LimitKind::uniform:
      reference = limit_uniform(m, spec.d);
      break;
    case LimitKind::noninteracting:
      reference = limit_noninteracting(m, spec.d, spec.beta, spec.epsilons);
      break;
    case LimitKind::condensate:
      reference = limit_condensate(m, spec.d);
      break;
    case LimitKind::meanfield: {
      if (mc_samples < 2) {
        throw ValidationError("sweep_to_limit: meanfield limit needs mc samples");
      }
      const McMomentEstimate estimate = mc_estimate_moment(
          m, spec.d, DeFinettiWeight::boltzmann(spec.beta, spec.t, spec.v), mc_samples, seed);
      reference = estimate.estimate;
      // 1-sigma scale of the trace-distance noise from the reference:
      // td <= sqrt(dim)/2 * frobenius(entry errors)
      sigma_ref = 0.5 * std::sqrt(static_cast<double>(reference.dim())) *
                  estimate.std_errors.norm();
      break;
    }
  }

  for (int n : n_list) {
    if (cancel != nullptr && cancel->load()) {
      result.truncated = true;
      break;
    }
    SweepRow row;
    row.n = n;
    row.m = m;
    row.beta = spec.beta;
    row.scaled = spec.scaled;
    row.sigma_ref = sigma_ref;
    const auto start = std::chrono::steady_clock::now();
    try {
      EnsembleSpec at_n = spec;
      at_n.n = n;
      SymOperator reduced;
      if (spec.kind == EnsembleKind::meanfield) {
        reduced = reduce_sym(build_ensemble(at_n), m);
      } else {
        reduced = reduce_diagonal_ensemble(build_ensemble_weights(at_n), n, spec.d, m);
      }
      row.trace_distance = trace_distance(reduced.matrix, reference.matrix);
    } catch (const CapacityError&) {
      row.skipped = true;
      row.trace_distance = std::numeric_limits<double>::quiet_NaN();
    }
    row.wall_time_s = seconds_since(start);
    result.rows.push_back(row);
  }
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "n,m,beta,scaled,trace_distance,sigma_ref,wall_time_s\n";
  for (const SweepRow& row : result.rows) {
    out << row.n << "," << row.m << "," << format_double(row.beta) << ","
        << (row.scaled ? 1 : 0) << "," << format_double(row.trace_distance) << ","
        << format_double(row.sigma_ref) << "," << format_double(row.wall_time_s) << "\n";
  }
  return out.str();
}

namespace {

// I^(ox m) ox W^(ox j): the disjoint-pair product W_(m+1,m+2)...W_(m+2j-1,m+2j).
Matrix pair_product_operator(const Matrix& w, int m, int j, int local_dim) {
  Matrix result = Matrix::Identity(pow_ll(local_dim, m), pow_ll(local_dim, m));
  for (int rep = 0; rep < j; ++rep) {
    result = Eigen::kroneckerProduct(result, w).eval();
  }
  return result;
}

}  // namespace

std::vector<ClaimDeviation> verify_claim(int j, int m, const std::vector<int>& n_list,
                                         const Matrix& t, const Matrix& v, int d) {
  if (j < 0 || j > 3) throw ValidationError("verify_claim: j must be between 0 and 3");
  if (m < 1) throw ValidationError("verify_claim: m must be at least 1");

  // Right-hand side, fixed in n: 2^(-j) {(I ox W^(ox j)) S_(m+2j)}_{:m}.
  const int big = m + 2 * j;
  const EmbeddingIsometry j_big = embedding_isometry(big, d);
  const SymOperator s_big = limit_uniform(big, d);
  const Matrix w = pair_kernel(t, v);
  const Matrix product = pair_product_operator(w, m, j, d + 1) *
                         (j_big.columns * s_big.matrix * j_big.columns.adjoint());
  const DenseOperator rhs_full =
      reduce_full(DenseOperator::make(big, d + 1, product), m);
  const Matrix rhs = rhs_full.entries / std::pow(2.0, j);

  const EmbeddingIsometry j_small = embedding_isometry(m, d);

  std::vector<ClaimDeviation> table;
  for (int n : n_list) {
    if (n < big) throw ValidationError("verify_claim: n must be at least m + 2j");
    const auto start = std::chrono::steady_clock::now();

    const SymOperator h = lift_two_body_meanfield(t, v, n);
    Matrix power = Matrix::Identity(h.dim(), h.dim());
    for (int rep = 0; rep < j; ++rep) power = (power * h.matrix).eval();
    power /= std::pow(static_cast<double>(n), j) * static_cast<double>(sym_dim(n, d));

    const SymOperator lhs_sym = reduce_sym(SymOperator::make(n, d, std::move(power)), m);
    const Matrix lhs = j_small.columns * lhs_sym.matrix * j_small.columns.adjoint();

    ClaimDeviation row;
    row.n = n;
    row.deviation = (lhs - rhs).cwiseAbs().maxCoeff();
    row.wall_time_s = seconds_since(start);
    table.push_back(row);
  }
  return table;
}

SeriesCheck verify_series(int truncation_order, double beta, int n, int m, const Matrix& t,
                          const Matrix& v, int d) {
  if (truncation_order < 0) throw ValidationError("verify_series: order must be nonnegative");
  if (m > n) throw ValidationError("verify_series: m must not exceed n");

  const SymOperator h = lift_two_body_meanfield(t, v, n);
  const double dim = static_cast<double>(sym_dim(n, d));

  // Partial sum of the moment series in the n-particle sector, then one
  // reduction.
  Matrix partial = Matrix::Zero(h.dim(), h.dim());
  Matrix power = Matrix::Identity(h.dim(), h.dim());
  double coeff = 1.0;
  for (int order = 0; order <= truncation_order; ++order) {
    if (order > 0) {
      power = (power * h.matrix).eval();
      coeff *= -beta / (static_cast<double>(n) * order);
    }
    partial += coeff * power;
  }
  partial /= dim;

  SeriesCheck check;
  check.truncation_order = truncation_order;
  check.beta = beta;
  check.truncated = reduce_sym(SymOperator::make(n, d, std::move(partial)), m);

  // Exact reduction of the Gibbs-weighted symmetrizer.
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix);
  if (solver.info() != Eigen::Success) throw NumericalError("verify_series: eigensolver failed");
  const RealVector exp_eigs =
      (-(beta / static_cast<double>(n)) * solver.eigenvalues().array()).exp();
  const Matrix gibbs =
      solver.eigenvectors() * exp_eigs.asDiagonal() * solver.eigenvectors().adjoint() / dim;
  check.exact = reduce_sym(SymOperator::make(n, d, gibbs), m);

  check.deviation = spectral_norm_hermitian(check.truncated.matrix - check.exact.matrix);

  // Analytic tail: sum_{j > J} beta^j ||W||^j / j!.
  const double w_norm = spectral_norm_hermitian(pair_kernel(t, v));
  const double x = std::abs(beta) * w_norm;
  double term = 1.0;
  for (int order = 1; order <= truncation_order + 1; ++order) term *= x / order;
  double tail = 0.0;
  for (int order = truncation_order + 1; order < truncation_order + 200; ++order) {
    tail += term;
    term *= x / (order + 1);
    if (term < 1e-300 || term < tail * 1e-18) break;
  }
  check.remainder_bound = tail;
  return check;
}

namespace {

// Bounded random perturbation profile: a linear function of p plus one
// phase-coupling harmonic, with coefficients in [-1, 1].
std::function<double(const SimplexPhasePoint&)> perturbation_profile(int d, std::uint64_t seed,
                                                                     std::uint64_t trial) {
  SplitStream stream(seed ^ 0xfeedf00dull, trial);
  std::vector<double> linear(static_cast<std::size_t>(d) + 1);
  for (double& a : linear) a = 2.0 * stream.next_uniform() - 1.0;
  const double harmonic = 2.0 * stream.next_uniform() - 1.0;
  return [linear, harmonic, d](const SimplexPhasePoint& point) {
    double g = 0.0;
    for (int i = 0; i <= d; ++i) g += linear[static_cast<std::size_t>(i)] * point.p[static_cast<std::size_t>(i)];
    if (d >= 1) {
      g += harmonic * std::cos(point.theta[0] - point.theta[1]) *
           std::sqrt(point.p[0] * point.p[1]);
    }
    return g;
  };
}

// Monte Carlo statistics of a raw (unnormalized) density over the fixed stream.
ScalarAccumulator stream_stats(const std::function<double(const SimplexPhasePoint&)>& density,
                               int d, std::size_t samples, std::uint64_t seed) {
  ScalarAccumulator acc;
  for (std::size_t i = 0; i < samples; ++i) {
    acc.push(density(sample_uniform_point(d, seed, i)));
  }
  return acc;
}

}  // namespace

VariationalReport variational_check(double beta, const Matrix& h, int d, int trials,
                                    std::size_t samples, std::uint64_t seed,
                                    double sigma_factor) {
  if (beta == 0.0) throw ValidationError("variational_check: beta must be nonzero");
  if (trials < 1) throw ValidationError("variational_check: need at least one trial");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("variational_check: eigensolver failed");
  }
  const RealVector spectrum = solver.eigenvalues();

  const auto boltzmann_raw = [&](const SimplexPhasePoint& point) {
    const Vector v = v_map(point);
    return std::exp(-beta * (v.adjoint() * h * v).value().real());
  };
  const ScalarAccumulator z_stats = stream_stats(boltzmann_raw, d, samples, seed);
  const double z_mc = z_stats.mean();
  const auto minimizer_density = [&, z_mc](const SimplexPhasePoint& point) {
    return boltzmann_raw(point) / z_mc;
  };

  VariationalReport report;
  report.sigma_factor = sigma_factor;
  report.z_estimate = z_mc;
  report.minimizer = free_energy(minimizer_density, beta, h, d, samples, seed);

  // Reference partition function: the phase average is unitarily invariant,
  // so Z reduces to a simplex integral over the spectrum of h.
  const QuadratureResult z_quad = integrate_simplex(
      d,
      [&](const std::vector<double>& p) {
        double energy = 0.0;
        for (int i = 0; i <= d; ++i) energy += spectrum(i) * p[static_cast<std::size_t>(i)];
        return std::exp(-beta * energy);
      },
      1e-10);
  report.z_reference = z_quad.value;
  report.reference_value = -std::log(z_quad.value) / beta;

  // Z error propagates into -(1/beta) ln Z.
  const double z_sigma = z_stats.std_error();
  const double sigma_combined =
      report.minimizer.std_error + z_sigma / (std::abs(beta) * z_mc);
  report.minimizer_matches_reference =
      std::abs(report.minimizer.value - report.reference_value) <=
      sigma_factor * sigma_combined;

  report.all_trials_consistent = true;
  for (int k = 0; k < trials; ++k) {
    const auto profile = perturbation_profile(d, seed, static_cast<std::uint64_t>(k));
    const auto perturbed_raw = [&](const SimplexPhasePoint& point) {
      return minimizer_density(point) * (1.0 + 0.3 * profile(point));
    };
    const double norm = stream_stats(perturbed_raw, d, samples, seed).mean();
    const auto perturbed = [&, norm](const SimplexPhasePoint& point) {
      return perturbed_raw(point) / norm;
    };
    const FreeEnergyEstimate estimate = free_energy(perturbed, beta, h, d, samples, seed);
    VariationalTrial trial;
    trial.value = estimate.value;
    trial.std_error = estimate.std_error;
    trial.consistent = report.minimizer.value <=
                       estimate.value + sigma_factor * (estimate.std_error +
                                                        report.minimizer.std_error);
    if (!trial.consistent) report.all_trials_consistent = false;
    report.trials.push_back(trial);
  }
  return report;
}

}  // namespace bosegas
