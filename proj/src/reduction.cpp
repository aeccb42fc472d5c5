#include "bosegas/reduction.hpp"

#include <cmath>
#include <string>

#include "bosegas/errors.hpp"

namespace bosegas {

namespace {

void check_levels(const OccupationVector& sub, const OccupationVector& super) {
  if (sub.levels() != super.levels()) {
    throw ValidationError("occupation vectors live on different level counts");
  }
}

// prod_i C(n_i, m_i) as an exact rational (zero when any m_i > n_i).
Rational occupation_binomial_product(const OccupationVector& occ_n, const OccupationVector& occ_m) {
  check_levels(occ_m, occ_n);
  Rational prod(1);
  for (int i = 0; i < occ_n.levels(); ++i) {
    if (occ_m[i] > occ_n[i]) return Rational(0);
    prod *= rat_binomial(occ_n[i], occ_m[i]);
  }
  return prod;
}

// prod_i C(n_i, m_i) / C(n, m) in double precision via falling factorials;
// safe for n far beyond the exact 64-bit range.
double reduction_ratio(const OccupationVector& occ_n, const OccupationVector& occ_m, int m) {
  double ratio = 1.0;
  for (int i = 0; i < occ_n.levels(); ++i) {
    if (occ_m[i] > occ_n[i]) return 0.0;
  }
  // prod_i n_i^(m_i) / n^(m) times the multinomial C(m, occ_m)
  const std::int64_t n = occ_n.total;
  int t_total = 0;
  for (int i = 0; i < occ_n.levels(); ++i) {
    for (int t = 0; t < occ_m[i]; ++t) {
      ratio *= static_cast<double>(occ_n[i] - t) / static_cast<double>(n - t_total);
      ++t_total;
    }
  }
  return ratio * static_cast<double>(multinomial(m, occ_m));
}

}  // namespace

ReductionWeights reduction_weights(int n, int m, int d) {
  if (m > n) throw ValidationError("reduction_weights: m must not exceed n");
  const SymBasis from(n, d);
  const SymBasis to(m, d);
  ReductionWeights w;
  w.n = n;
  w.m = m;
  w.d = d;
  w.table.resize(static_cast<std::size_t>(from.size()));
  const Rational denom = rat_binomial(n, m);
  for (std::int64_t row = 0; row < from.size(); ++row) {
    auto& out = w.table[static_cast<std::size_t>(row)];
    out.reserve(static_cast<std::size_t>(to.size()));
    for (std::int64_t col = 0; col < to.size(); ++col) {
      out.push_back(occupation_binomial_product(from.state(row), to.state(col)) / denom);
    }
  }
  return w;
}

std::vector<Rational> reduction_weight_row(const OccupationVector& occ, int m) {
  const int n = occ.total;
  if (m > n) throw ValidationError("reduction weight row: m must not exceed n");
  const SymBasis to(m, occ.level_parameter());
  const Rational denom = rat_binomial(n, m);
  std::vector<Rational> row;
  row.reserve(static_cast<std::size_t>(to.size()));
  for (std::int64_t col = 0; col < to.size(); ++col) {
    row.push_back(occupation_binomial_product(occ, to.state(col)) / denom);
  }
  return row;
}

SymOperator reduce_projector(const OccupationVector& occ, int m) {
  const std::vector<Rational> row = reduction_weight_row(occ, m);
  RealVector diag(static_cast<std::int64_t>(row.size()));
  for (std::size_t i = 0; i < row.size(); ++i) {
    diag(static_cast<std::int64_t>(i)) = to_double(row[i]);
  }
  return SymOperator::diagonal(m, occ.level_parameter(), diag);
}

SymOperator reduce_diagonal_ensemble(const RealVector& weights, int n, int d, int m) {
  if (m > n) throw ValidationError("reduce_diagonal_ensemble: m must not exceed n");
  const double total = weights.sum();
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("ensemble weights sum to " + std::to_string(total) + ", expected 1");
  }
  const SymBasis from(n, d);
  if (weights.size() != from.size()) {
    throw ValidationError("ensemble weight vector has wrong length");
  }
  const SymBasis to(m, d);
  RealVector diag = RealVector::Zero(to.size());
  for (std::int64_t row = 0; row < from.size(); ++row) {
    const double w = weights(row);
    if (w == 0.0) continue;
    for (std::int64_t col = 0; col < to.size(); ++col) {
      const double r = reduction_ratio(from.state(row), to.state(col), m);
      if (r != 0.0) diag(col) += w * r;
    }
  }
  return SymOperator::diagonal(m, d, diag);
}

std::vector<Rational> reduce_diagonal_exact(const std::vector<Rational>& weights, int n, int d,
                                            int m) {
  const SymBasis from(n, d);
  if (static_cast<std::int64_t>(weights.size()) != from.size()) {
    throw ValidationError("ensemble weight vector has wrong length");
  }
  const SymBasis to(m, d);
  const Rational denom = rat_binomial(n, m);
  std::vector<Rational> out(static_cast<std::size_t>(to.size()), Rational(0));
  for (std::int64_t row = 0; row < from.size(); ++row) {
    if (weights[static_cast<std::size_t>(row)] == Rational(0)) continue;
    for (std::int64_t col = 0; col < to.size(); ++col) {
      const Rational r = occupation_binomial_product(from.state(row), to.state(col)) / denom;
      if (r != Rational(0)) {
        out[static_cast<std::size_t>(col)] += weights[static_cast<std::size_t>(row)] * r;
      }
    }
  }
  return out;
}

double fn_weight(std::span<const double> p, const OccupationVector& occ_m, std::int64_t n) {
  const int levels = occ_m.levels();
  if (static_cast<int>(p.size()) != levels) {
    throw ValidationError("fn_weight: point and occupation have different level counts");
  }
  const int m = occ_m.total;
  if (n < m) throw ValidationError("fn_weight: n must be at least the occupation total");
  double sum = 0.0;
  for (double pi : p) {
    if (pi < -1e-12) throw ValidationError("fn_weight: point has negative coordinate");
    sum += pi;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("fn_weight: point is outside the simplex tolerance");
  }

  // indicator gate: p_i > (m_i - 1)/n for every level
  const double nn = static_cast<double>(n);
  for (int i = 0; i < levels; ++i) {
    if (!(p[static_cast<std::size_t>(i)] > (static_cast<double>(occ_m[i]) - 1.0) / nn)) return 0.0;
  }
  double numerator = 1.0;
  for (int i = 0; i < levels; ++i) {
    for (int t = 0; t < occ_m[i]; ++t) {
      numerator *= p[static_cast<std::size_t>(i)] - static_cast<double>(t) / nn;
    }
  }
  double denominator = 1.0;
  for (int t = 0; t < m; ++t) {
    denominator *= 1.0 - static_cast<double>(t) / nn;
  }
  return numerator / denominator;
}

DenseOperator reduce_full(const DenseOperator& a, int m) {
  if (m > a.factors) throw ValidationError("reduce_full: m must not exceed the factor count");
  if (m < 1) throw ValidationError("reduce_full: m must be at least 1");
  if (m == a.factors) return a;
  const std::int64_t kept = pow_ll(a.local_dim, m);
  const std::int64_t traced = pow_ll(a.local_dim, a.factors - m);

  Matrix out = Matrix::Zero(kept, kept);
  for (std::int64_t row = 0; row < kept; ++row) {
    for (std::int64_t col = 0; col < kept; ++col) {
      Complex sum = 0.0;
      for (std::int64_t b = 0; b < traced; ++b) {
        sum += a.entries(row * traced + b, col * traced + b);
      }
      out(row, col) = sum;
    }
  }
  DenseOperator r = DenseOperator::make(m, a.local_dim, std::move(out));
  r.hermitian = a.hermitian;
  return r;
}

DensityOperator reduce_full(const DensityOperator& rho, int m) {
  return DensityOperator::make(reduce_full(rho.op, m), rho.tolerance);
}

SymOperator reduce_sym(const SymOperator& a, int m) {
  if (m > a.n) throw ValidationError("reduce_sym: m must not exceed n");
  if (m < 0) throw ValidationError("reduce_sym: m must be nonnegative");
  if (m == a.n) return a;
  const int n = a.n;
  const int d = a.d;
  const SymBasis from(n, d);
  const SymBasis to(m, d);
  const SymBasis rest(n - m, d);

  // Branching: Psi_n = sum_{m'} sqrt(prod_i C(n_i, m'_i) / C(n, m))
  //                    Psi_m' ox Psi_(n - m'), so the partial trace couples
  // (row occ_n, col occ_n') through every pair (m'', m') with
  // occ_n - m'' = occ_n' - m'.
  const double denom = static_cast<double>(binomial(n, m));
  std::vector<std::vector<double>> amp(static_cast<std::size_t>(from.size()));
  std::vector<std::vector<std::int64_t>> rest_ordinal(static_cast<std::size_t>(from.size()));
  std::vector<int> scratch;
  for (std::int64_t row = 0; row < from.size(); ++row) {
    const OccupationVector& occ = from.state(row);
    auto& amps = amp[static_cast<std::size_t>(row)];
    auto& rests = rest_ordinal[static_cast<std::size_t>(row)];
    amps.assign(static_cast<std::size_t>(to.size()), 0.0);
    rests.assign(static_cast<std::size_t>(to.size()), -1);
    for (std::int64_t col = 0; col < to.size(); ++col) {
      const OccupationVector& part = to.state(col);
      double prod = 1.0;
      bool ok = true;
      scratch = occ.counts;
      for (int i = 0; i <= d; ++i) {
        if (part[i] > occ[i]) {
          ok = false;
          break;
        }
        prod *= static_cast<double>(binomial(occ[i], part[i]));
        scratch[static_cast<std::size_t>(i)] -= part[i];
      }
      if (!ok) continue;
      amps[static_cast<std::size_t>(col)] = std::sqrt(prod / denom);
      rests[static_cast<std::size_t>(col)] = rest.ordinal(OccupationVector(scratch));
    }
  }

  Matrix out = Matrix::Zero(to.size(), to.size());
  for (std::int64_t row = 0; row < from.size(); ++row) {
    for (std::int64_t col = 0; col < from.size(); ++col) {
      const Complex value = a.matrix(row, col);
      if (value == Complex(0.0)) continue;
      const auto& amps_r = amp[static_cast<std::size_t>(row)];
      const auto& rests_r = rest_ordinal[static_cast<std::size_t>(row)];
      const auto& amps_c = amp[static_cast<std::size_t>(col)];
      const auto& rests_c = rest_ordinal[static_cast<std::size_t>(col)];
      for (std::int64_t i = 0; i < to.size(); ++i) {
        if (rests_r[static_cast<std::size_t>(i)] < 0) continue;
        for (std::int64_t k = 0; k < to.size(); ++k) {
          if (rests_c[static_cast<std::size_t>(k)] !=
              rests_r[static_cast<std::size_t>(i)])
            continue;
          out(i, k) += value * amps_r[static_cast<std::size_t>(i)] *
                       amps_c[static_cast<std::size_t>(k)];
        }
      }
    }
  }
  SymOperator r = SymOperator::make(m, d, std::move(out));
  r.hermitian = a.hermitian;
  return r;
}

}  // namespace bosegas
