#include "bosegas/definetti.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>

#include "bosegas/accumulator.hpp"
#include "bosegas/errors.hpp"
#include "bosegas/quadrature.hpp"
#include "bosegas/rng.hpp"

namespace bosegas {

void SimplexPhasePoint::validate(double tol) const {
  if (p.empty() || p.size() != theta.size()) {
    throw ValidationError("simplex-phase point: p and theta must both have d+1 entries");
  }
  double sum = 0.0;
  for (double pi : p) {
    if (pi < 0.0) throw ValidationError("simplex-phase point: negative probability");
    sum += pi;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw ValidationError("simplex-phase point: probabilities sum to " + std::to_string(sum));
  }
}

DeFinettiWeight DeFinettiWeight::uniform() { return DeFinettiWeight{}; }

DeFinettiWeight DeFinettiWeight::boltzmann(double beta, Matrix t, Matrix v) {
  DeFinettiWeight w;
  w.form = WeightForm::boltzmann;
  w.beta = beta;
  w.t = std::move(t);
  w.v = std::move(v);
  const std::int64_t q = w.t.rows();
  if (w.t.cols() != q || w.v.rows() != q * q || w.v.cols() != q * q) {
    throw ValidationError("boltzmann weight: T must be (d+1)^2 and V (d+1)^2 square");
  }
  return w;
}

double DeFinettiWeight::energy(const Vector& vec) const {
  const std::int64_t q = vec.size();
  // Tr(T P_v) = <v, T v>
  double e = (vec.adjoint() * t * vec).value().real();
  // Tr(V P_v ox P_v) = <v ox v, V (v ox v)>
  Vector vv(q * q);
  for (std::int64_t a = 0; a < q; ++a)
    for (std::int64_t b = 0; b < q; ++b) vv(a * q + b) = vec(a) * vec(b);
  e += 0.5 * (vv.adjoint() * v * vv).value().real();
  return e;
}

double DeFinettiWeight::log_weight(const Vector& vec) const {
  if (form == WeightForm::uniform) return 0.0;
  return -beta * energy(vec);
}

Vector v_map(const SimplexPhasePoint& point) {
  point.validate();
  const int q = static_cast<int>(point.p.size());
  Vector v(q);
  for (int j = 0; j < q; ++j) {
    v(j) = std::polar(std::sqrt(point.p[static_cast<std::size_t>(j)]),
                      point.theta[static_cast<std::size_t>(j)]);
  }
  return v;
}

Rational dirichlet_moment(const OccupationVector& occ_m, int d) {
  if (occ_m.levels() != d + 1) {
    throw ValidationError("dirichlet_moment: occupation has wrong level count");
  }
  const int m = occ_m.total;
  // d! prod(m_i!) / (m+d)!  ==  1 / ( C(m+d, d) * C(m, occ_m) )
  return Rational(1) / (rat_binomial(m + d, d) * rat_multinomial(m, occ_m));
}

std::vector<Rational> limit_uniform_exact(int m, int d) {
  const SymBasis basis(m, d);
  std::vector<Rational> coeffs;
  coeffs.reserve(static_cast<std::size_t>(basis.size()));
  for (std::int64_t i = 0; i < basis.size(); ++i) {
    const OccupationVector& occ = basis.state(i);
    coeffs.push_back(rat_multinomial(m, occ) * dirichlet_moment(occ, d));
  }
  return coeffs;
}

SymOperator limit_uniform(int m, int d) {
  const std::vector<Rational> coeffs = limit_uniform_exact(m, d);
  RealVector diag(static_cast<std::int64_t>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    diag(static_cast<std::int64_t>(i)) = to_double(coeffs[i]);
  }
  return SymOperator::diagonal(m, d, diag);
}

McMomentEstimate limit_noninteracting_mc(int m, int d, double beta,
                                         const std::vector<double>& epsilons,
                                         std::size_t samples, std::uint64_t seed) {
  if (static_cast<int>(epsilons.size()) != d + 1) {
    throw ValidationError("limit_noninteracting_mc: epsilons must have d+1 entries");
  }
  Matrix t = Matrix::Zero(d + 1, d + 1);
  for (int i = 0; i <= d; ++i) t(i, i) = epsilons[static_cast<std::size_t>(i)];
  const std::int64_t q = d + 1;
  return mc_estimate_moment(m, d, DeFinettiWeight::boltzmann(beta, t, Matrix::Zero(q * q, q * q)),
                            samples, seed);
}

SymOperator limit_noninteracting(int m, int d, double beta, const std::vector<double>& epsilons,
                                 double rel_tol) {
  if (static_cast<int>(epsilons.size()) != d + 1) {
    throw ValidationError("limit_noninteracting: epsilons must have d+1 entries");
  }
  if (d > 4) {
    // quadrature is impractical here; Monte Carlo with error bars
    return limit_noninteracting_mc(m, d, beta, epsilons, 1u << 20, 0x5eedULL).estimate;
  }

  const auto boltzmann = [&](const std::vector<double>& p) {
    double energy = 0.0;
    for (int i = 0; i <= d; ++i) energy += epsilons[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i)];
    return std::exp(-beta * energy);
  };

  // tensor-rule node budget per axis shrinks with dimension
  const int max_nodes = d <= 2 ? 256 : (d == 3 ? 96 : 48);
  const QuadratureResult z = integrate_simplex(d, boltzmann, rel_tol, max_nodes);
  if (!z.converged) {
    throw NumericalError("limit_noninteracting: normalization quadrature reached rel error " +
                         std::to_string(z.rel_error) + " only");
  }

  const SymBasis basis(m, d);
  RealVector diag(basis.size());
  for (std::int64_t i = 0; i < basis.size(); ++i) {
    const OccupationVector& occ = basis.state(i);
    const auto integrand = [&](const std::vector<double>& p) {
      double mono = 1.0;
      for (int level = 0; level <= d; ++level) {
        for (int rep = 0; rep < occ[level]; ++rep) mono *= p[static_cast<std::size_t>(level)];
      }
      return mono * boltzmann(p);
    };
    const QuadratureResult moment = integrate_simplex(d, integrand, rel_tol, max_nodes);
    if (!moment.converged) {
      throw NumericalError("limit_noninteracting: moment quadrature for " + occ.to_string() +
                           " reached rel error " + std::to_string(moment.rel_error) + " only");
    }
    diag(i) = static_cast<double>(multinomial(m, occ)) * moment.value / z.value;
  }
  return SymOperator::diagonal(m, d, diag);
}

SymOperator limit_condensate(int m, int d) {
  RealVector diag = RealVector::Zero(sym_dim(m, d));
  diag(0) = 1.0;  // (m, 0, ..., 0) is ordinal 0 in the canonical order
  return SymOperator::diagonal(m, d, diag);
}

SimplexPhasePoint sample_uniform_point(int d, std::uint64_t seed, std::uint64_t index) {
  SplitStream stream(seed, index);
  SimplexPhasePoint point;
  point.p.resize(static_cast<std::size_t>(d) + 1);
  point.theta.resize(static_cast<std::size_t>(d) + 1);
  // normalized standard exponentials are Dirichlet(1, ..., 1)
  double sum = 0.0;
  for (double& pi : point.p) {
    pi = stream.next_exponential();
    sum += pi;
  }
  for (double& pi : point.p) pi /= sum;
  for (double& th : point.theta) th = stream.next_phase();
  return point;
}

namespace {

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  if (const char* env = std::getenv("BOSEGAS_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 1;
}

// Occupation coordinates of v^(ox m): z_occ = sqrt(C(m, occ)) prod v_i^(m_i).
Vector sym_coordinates(const Vector& v, const SymBasis& basis) {
  Vector z(basis.size());
  for (std::int64_t i = 0; i < basis.size(); ++i) {
    const OccupationVector& occ = basis.state(i);
    Complex prod = std::sqrt(static_cast<double>(multinomial(basis.n(), occ)));
    for (int level = 0; level < occ.levels(); ++level) {
      for (int rep = 0; rep < occ[level]; ++rep) prod *= v(level);
    }
    z(i) = prod;
  }
  return z;
}

}  // namespace

McMomentEstimate mc_estimate_moment(int m, int d, const DeFinettiWeight& weight,
                                    std::size_t samples, std::uint64_t seed, int workers) {
  if (samples < 2) throw ValidationError("mc_estimate_moment: need at least 2 samples");
  const SymBasis basis(m, d);
  const std::int64_t dim = basis.size();

  // Fixed chunking makes the merged result independent of the worker count.
  constexpr std::size_t kChunk = 8192;
  const std::size_t n_chunks = (samples + kChunk - 1) / kChunk;
  std::vector<MomentAccumulator> chunks(n_chunks, MomentAccumulator(dim, dim));

  const int n_workers = std::min<int>(resolve_workers(workers), static_cast<int>(n_chunks));
  std::atomic<std::size_t> next_chunk{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&]() {
    try {
      for (;;) {
        const std::size_t c = next_chunk.fetch_add(1);
        if (c >= n_chunks) return;
        MomentAccumulator& acc = chunks[c];
        const std::size_t begin = c * kChunk;
        const std::size_t end = std::min(samples, begin + kChunk);
        for (std::size_t i = begin; i < end; ++i) {
          const SimplexPhasePoint point = sample_uniform_point(d, seed, i);
          const Vector v = v_map(point);
          const Vector z = sym_coordinates(v, basis);
          const double u = std::exp(weight.log_weight(v));
          if (!std::isfinite(u)) throw NumericalError("mc_estimate_moment: weight overflow");
          // numerator integrand carries the importance weight
          acc.push((z * z.adjoint()) * u, u);
        }
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  MomentAccumulator total(dim, dim);
  for (const auto& acc : chunks) total.merge(acc);

  McMomentEstimate out;
  const Matrix ratio = total.ratio();
  const double trace = ratio.trace().real();
  out.trace_deviation = std::abs(trace - 1.0);
  out.estimate = SymOperator::make(m, d, ratio / trace);
  out.estimate.hermitian = true;
  out.std_errors = total.ratio_std_errors();
  out.z_estimate = total.weight_mean();
  out.z_std_error = total.weight_std_error();
  out.bias_scale = total.bias_scale();
  out.samples = samples;
  out.seed = seed;
  return out;
}

PhaseAverageReport phase_average_exact(int m, int d,
                                       const std::vector<std::vector<double>>& p_points) {
  if (m < 1 || m > 4 || d < 0 || d > 2) {
    throw CapacityError("phase_average_exact: supported for m <= 4 and d <= 2");
  }
  const int q = d + 1;
  const std::int64_t dim = pow_ll(q, m);

  // Enumerate index words and group them by occupation profile.
  std::vector<std::vector<int>> words;
  words.reserve(static_cast<std::size_t>(dim));
  for (std::int64_t idx = 0; idx < dim; ++idx) words.push_back(index_digits(idx, m, q));
  std::vector<std::int64_t> profile_of(words.size());
  const SymBasis basis(m, d);
  for (std::size_t w = 0; w < words.size(); ++w) {
    profile_of[w] = basis.ordinal(occupation_profile(words[w], d));
  }

  const EmbeddingIsometry j = embedding_isometry(m, d);

  PhaseAverageReport report;
  report.m = m;
  report.d = d;
  report.block_diagonal = true;

  for (const auto& p : p_points) {
    if (static_cast<int>(p.size()) != q) {
      throw ValidationError("phase_average_exact: p point has wrong length");
    }
    // Phase integral of P_v^(ox m): only profile-matched (j, k) words survive,
    // each contributing prod sqrt(p_j p_k) with all phases cancelled.
    Matrix averaged = Matrix::Zero(dim, dim);
    for (std::size_t jw = 0; jw < words.size(); ++jw) {
      double amp_j = 1.0;
      for (int r = 0; r < m; ++r) amp_j *= std::sqrt(p[static_cast<std::size_t>(words[jw][static_cast<std::size_t>(r)])]);
      for (std::size_t kw = 0; kw < words.size(); ++kw) {
        if (profile_of[jw] != profile_of[kw]) continue;
        double amp_k = 1.0;
        for (int r = 0; r < m; ++r) amp_k *= std::sqrt(p[static_cast<std::size_t>(words[kw][static_cast<std::size_t>(r)])]);
        averaged(static_cast<std::int64_t>(jw), static_cast<std::int64_t>(kw)) = amp_j * amp_k;
      }
    }

    // Reference: sum_occ C(m, occ) prod p^occ P_occ in full coordinates.
    Matrix reference = Matrix::Zero(dim, dim);
    for (std::int64_t i = 0; i < basis.size(); ++i) {
      const OccupationVector& occ = basis.state(i);
      double coeff = static_cast<double>(multinomial(m, occ));
      for (int level = 0; level <= d; ++level) {
        for (int rep = 0; rep < occ[level]; ++rep) coeff *= p[static_cast<std::size_t>(level)];
      }
      reference += coeff * (j.columns.col(i) * j.columns.col(i).adjoint());
    }

    report.per_point_deviation.push_back((averaged - reference).cwiseAbs().maxCoeff());

    // Block diagonality across occupation sectors in the symmetric basis.
    const Matrix compressed = j.columns.adjoint() * averaged * j.columns;
    for (std::int64_t a = 0; a < basis.size() && report.block_diagonal; ++a) {
      for (std::int64_t b = 0; b < basis.size(); ++b) {
        if (a != b && std::abs(compressed(a, b)) > 1e-10) {
          report.block_diagonal = false;
          break;
        }
      }
    }
  }
  report.max_deviation = report.per_point_deviation.empty()
                             ? 0.0
                             : *std::max_element(report.per_point_deviation.begin(),
                                                 report.per_point_deviation.end());
  return report;
}

FreeEnergyEstimate free_energy(const std::function<double(const SimplexPhasePoint&)>& density,
                               double beta, const Matrix& h, int d, std::size_t samples,
                               std::uint64_t seed) {
  if (beta == 0.0) throw ValidationError("free_energy: beta must be nonzero");
  if (h.rows() != d + 1 || h.cols() != d + 1) {
    throw ValidationError("free_energy: H must be (d+1)x(d+1)");
  }
  if (samples < 2) throw ValidationError("free_energy: need at least 2 samples");

  ScalarAccumulator functional;
  ScalarAccumulator normalization;
  for (std::size_t i = 0; i < samples; ++i) {
    const SimplexPhasePoint point = sample_uniform_point(d, seed, i);
    const double f = density(point);
    if (f <= 0.0) {
      throw NumericalError("free_energy: nonpositive density value encountered");
    }
    const Vector v = v_map(point);
    const double energy = (v.adjoint() * h * v).value().real();
    functional.push(energy * f + f * std::log(f) / beta);
    normalization.push(f);
  }
  if (std::abs(normalization.mean() - 1.0) > 1e-6) {
    throw ValidationError("free_energy: density is not normalized under MC quadrature (mean " +
                          std::to_string(normalization.mean()) + ")");
  }

  FreeEnergyEstimate out;
  out.value = functional.mean();
  out.std_error = functional.std_error();
  out.normalization = normalization.mean();
  out.samples = samples;
  return out;
}

}  // namespace bosegas
