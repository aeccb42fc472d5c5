#ifndef BOSEGAS_ACCUMULATOR_HPP
#define BOSEGAS_ACCUMULATOR_HPP

#include <cstdint>

#include "bosegas/types.hpp"

namespace bosegas {

// Streaming moments of a matrix-valued integrand g with an attached real
// weight u, sufficient for self-normalized importance-sampling estimates
// R = mean(g)/mean(u) with delta-method standard errors.  Plain Monte Carlo
// means are the u == 1 special case.  Accumulators merge associatively
// (Chan et al. pairwise update), so any fixed partition of the sample stream
// reproduces the single-pass result.
class MomentAccumulator {
 public:
  MomentAccumulator(std::int64_t rows, std::int64_t cols);

  void push(const Matrix& g, double u = 1.0);
  void merge(const MomentAccumulator& other);

  std::int64_t count() const { return count_; }
  const Matrix& mean() const { return mean_; }
  double weight_mean() const { return weight_mean_; }
  double weight_std_error() const;

  // Self-normalized estimate mean(g)/mean(u) and its per-entry standard
  // errors (delta method on the ratio).
  Matrix ratio() const;
  RealMatrix ratio_std_errors() const;

  // Magnitude scale of the O(1/N) ratio bias, max over entries.
  double bias_scale() const;

 private:
  std::int64_t count_ = 0;
  Matrix mean_;        // running mean of g
  double weight_mean_ = 0.0;
  RealMatrix m2_;      // sum |g - mean|^2, per entry
  double weight_m2_ = 0.0;
  Matrix cross_;       // sum (g - mean_g)(u - mean_u), per entry
};

// Scalar Welford accumulator.
class ScalarAccumulator {
 public:
  void push(double x);
  void merge(const ScalarAccumulator& other);
  std::int64_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const;
  double std_error() const;

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace bosegas

#endif
