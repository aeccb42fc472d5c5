#include "bosegas/accumulator.hpp"

#include <cmath>

#include "bosegas/errors.hpp"

namespace bosegas {

MomentAccumulator::MomentAccumulator(std::int64_t rows, std::int64_t cols)
    : mean_(Matrix::Zero(rows, cols)),
      m2_(RealMatrix::Zero(rows, cols)),
      cross_(Matrix::Zero(rows, cols)) {}

void MomentAccumulator::push(const Matrix& g, double u) {
  if (g.rows() != mean_.rows() || g.cols() != mean_.cols()) {
    throw ValidationError("accumulator: sample has wrong shape");
  }
  ++count_;
  const double inv = 1.0 / static_cast<double>(count_);
  const Matrix delta = g - mean_;
  const double wdelta = u - weight_mean_;
  mean_ += delta * inv;
  weight_mean_ += wdelta * inv;
  const Matrix delta2 = g - mean_;   // deviation from the updated mean
  const double wdelta2 = u - weight_mean_;
  m2_ += delta.cwiseProduct(delta2.conjugate()).real();
  weight_m2_ += wdelta * wdelta2;
  cross_ += delta * wdelta2;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double nab = na + nb;
  const Matrix delta = other.mean_ - mean_;
  const double wdelta = other.weight_mean_ - weight_mean_;

  m2_ += other.m2_ + (delta.cwiseAbs2() * (na * nb / nab));
  weight_m2_ += other.weight_m2_ + wdelta * wdelta * na * nb / nab;
  cross_ += other.cross_ + delta * (wdelta * na * nb / nab);
  mean_ += delta * (nb / nab);
  weight_mean_ += wdelta * (nb / nab);
  count_ += other.count_;
}

double MomentAccumulator::weight_std_error() const {
  if (count_ < 2) throw ValidationError("accumulator: need at least 2 samples for error bars");
  const double n = static_cast<double>(count_);
  return std::sqrt(weight_m2_ / ((n - 1.0) * n));
}

Matrix MomentAccumulator::ratio() const {
  if (count_ < 1) throw ValidationError("accumulator: empty");
  if (weight_mean_ == 0.0) throw NumericalError("accumulator: zero mean weight");
  return mean_ / weight_mean_;
}

RealMatrix MomentAccumulator::ratio_std_errors() const {
  if (count_ < 2) throw ValidationError("accumulator: need at least 2 samples for error bars");
  const double n = static_cast<double>(count_);
  const Matrix r = ratio();
  // var(g - R u) per entry, from centered moments
  RealMatrix var = m2_;
  var -= 2.0 * (r.conjugate().cwiseProduct(cross_)).real();
  var += r.cwiseAbs2() * weight_m2_;
  var = var.cwiseMax(0.0) / (n - 1.0);
  return (var / n).cwiseSqrt() / std::abs(weight_mean_);
}

double MomentAccumulator::bias_scale() const {
  if (count_ < 2) return 0.0;
  const double n = static_cast<double>(count_);
  const Matrix r = ratio();
  // standard SNIS bias estimate: (R var(u) - cov(g, u)) / (N ubar^2)
  const Matrix bias =
      (r * (weight_m2_ / (n - 1.0)) - cross_ / (n - 1.0)) / (n * weight_mean_ * weight_mean_);
  return bias.cwiseAbs().maxCoeff();
}

void ScalarAccumulator::push(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void ScalarAccumulator::merge(const ScalarAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double delta = other.mean_ - mean_;
  m2_ += other.m2_ + delta * delta * na * nb / (na + nb);
  mean_ += delta * nb / (na + nb);
  count_ += other.count_;
}

double ScalarAccumulator::variance() const {
  if (count_ < 2) throw ValidationError("accumulator: need at least 2 samples");
  return m2_ / static_cast<double>(count_ - 1);
}

double ScalarAccumulator::std_error() const {
  return std::sqrt(variance() / static_cast<double>(count_));
}

}  // namespace bosegas
