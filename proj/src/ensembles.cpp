#include "bosegas/ensembles.hpp"

#include <cmath>
#include <limits>

#include "bosegas/errors.hpp"
#include "bosegas/occupation.hpp"

namespace bosegas {

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::uniform: return "uniform";
    case EnsembleKind::noninteracting: return "noninteracting";
    case EnsembleKind::meanfield: return "meanfield";
  }
  return "?";
}

EnsembleKind ensemble_kind_from_string(const std::string& s) {
  if (s == "uniform") return EnsembleKind::uniform;
  if (s == "noninteracting") return EnsembleKind::noninteracting;
  if (s == "meanfield") return EnsembleKind::meanfield;
  throw ValidationError("unknown ensemble kind '" + s + "'");
}

void EnsembleSpec::validate() const {
  if (n < 0 || d < 0) throw ValidationError("ensemble: n and d must be nonnegative");
  if (!std::isfinite(beta)) throw ValidationError("ensemble: beta must be finite");
  if (kind == EnsembleKind::noninteracting) {
    if (static_cast<int>(epsilons.size()) != d + 1) {
      throw ValidationError("ensemble: epsilons must have d+1 entries");
    }
    for (double e : epsilons) {
      if (!std::isfinite(e)) throw ValidationError("ensemble: epsilons must be finite");
    }
  }
  if (kind == EnsembleKind::meanfield) {
    if (n < 2) throw ValidationError("ensemble: meanfield needs n >= 2");
    if (t.rows() != d + 1 || t.cols() != d + 1) {
      throw ValidationError("ensemble: T must be (d+1)x(d+1)");
    }
    const int q = d + 1;
    if (v.rows() != q * q || v.cols() != q * q) {
      throw ValidationError("ensemble: V must be (d+1)^2 x (d+1)^2");
    }
  }
}

RealVector uniform_weights(int n, int d) {
  const std::int64_t dim = sym_dim(n, d);
  if (dim > capacity().max_sym_dim) {
    throw CapacityError("uniform_weights: sym dimension too large");
  }
  return RealVector::Constant(dim, 1.0 / static_cast<double>(dim));
}

RealVector noninteracting_weights(int n, int d, double beta_eff,
                                  const std::vector<double>& epsilons) {
  if (static_cast<int>(epsilons.size()) != d + 1) {
    throw ValidationError("noninteracting_weights: epsilons must have d+1 entries");
  }
  const SymBasis basis(n, d);
  RealVector log_w(basis.size());
  for (std::int64_t i = 0; i < basis.size(); ++i) {
    const OccupationVector& occ = basis.state(i);
    double energy = 0.0;
    for (int level = 0; level <= d; ++level) {
      energy += static_cast<double>(occ[level]) * epsilons[static_cast<std::size_t>(level)];
    }
    log_w(i) = -beta_eff * energy;
  }
  // max-exponent shift keeps the largest Boltzmann factor at 1
  const double shift = log_w.maxCoeff();
  RealVector w = (log_w.array() - shift).exp();
  const double z = w.sum();
  if (!std::isfinite(z) || z <= 0.0) {
    throw NumericalError("noninteracting_weights: partition sum overflowed despite shifting");
  }
  return w / z;
}

SymOperator uniform_ensemble(int n, int d) {
  return SymOperator::diagonal(n, d, uniform_weights(n, d));
}

SymOperator gibbs_noninteracting(int n, int d, double beta_eff,
                                 const std::vector<double>& epsilons) {
  return SymOperator::diagonal(n, d, noninteracting_weights(n, d, beta_eff, epsilons));
}

SymOperator gibbs_meanfield(int n, int d, double beta_eff, const Matrix& t, const Matrix& v) {
  const SymOperator h = lift_two_body_meanfield(t, v, n);

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("gibbs_meanfield: eigensolver failed");
  }
  // log-domain normalization with max shift
  const RealVector scaled = -beta_eff * solver.eigenvalues().array();
  const double shift = scaled.maxCoeff();
  const RealVector boltzmann = (scaled.array() - shift).exp();
  const double z = boltzmann.sum();
  if (!std::isfinite(z) || z <= 0.0) {
    throw NumericalError("gibbs_meanfield: partition sum overflowed despite shifting");
  }
  Matrix rho = solver.eigenvectors() * (boltzmann / z).asDiagonal() *
               solver.eigenvectors().adjoint();
  SymOperator out = SymOperator::make(n, d, std::move(rho));
  out.hermitian = true;
  return out;
}

SymOperator build_ensemble(const EnsembleSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case EnsembleKind::uniform: return uniform_ensemble(spec.n, spec.d);
    case EnsembleKind::noninteracting:
      return gibbs_noninteracting(spec.n, spec.d, spec.beta_eff(), spec.epsilons);
    case EnsembleKind::meanfield:
      return gibbs_meanfield(spec.n, spec.d, spec.beta_eff(), spec.t, spec.v);
  }
  throw ValidationError("unknown ensemble kind");
}

RealVector build_ensemble_weights(const EnsembleSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case EnsembleKind::uniform: return uniform_weights(spec.n, spec.d);
    case EnsembleKind::noninteracting:
      return noninteracting_weights(spec.n, spec.d, spec.beta_eff(), spec.epsilons);
    case EnsembleKind::meanfield:
      throw ValidationError("meanfield ensembles are not occupation-diagonal");
  }
  throw ValidationError("unknown ensemble kind");
}

}  // namespace bosegas
