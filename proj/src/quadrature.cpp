#include "bosegas/quadrature.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "bosegas/errors.hpp"
#include "bosegas/types.hpp"

namespace bosegas {

GaussRule gauss_legendre_01(int points) {
  if (points < 1) throw ValidationError("gauss rule needs at least one point");
  // Golub-Welsch: eigendecompose the Jacobi matrix of the Legendre weights.
  RealMatrix jacobi = RealMatrix::Zero(points, points);
  for (int k = 1; k < points; ++k) {
    const double b = static_cast<double>(k) / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(jacobi);
  if (solver.info() != Eigen::Success) throw NumericalError("gauss rule: eigensolver failed");

  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(points));
  rule.weights.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    // map [-1, 1] -> [0, 1]; weights normalized to total 1
    rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (solver.eigenvalues()(i) + 1.0);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[static_cast<std::size_t>(i)] = v0 * v0;
  }
  return rule;
}

namespace {

// One pass of the tensorized Duffy-transformed rule at a fixed order.
double duffy_pass(int d, const std::function<double(const std::vector<double>&)>& f,
                  const GaussRule& rule, std::size_t& evaluations) {
  const int k = static_cast<int>(rule.nodes.size());
  std::vector<int> odometer(static_cast<std::size_t>(d), 0);
  std::vector<double> p(static_cast<std::size_t>(d) + 1, 0.0);

  double total = 0.0;
  bool done = false;
  while (!done) {
    double weight = 1.0;
    double remaining = 1.0;
    for (int axis = 0; axis < d; ++axis) {
      const double u = rule.nodes[static_cast<std::size_t>(odometer[static_cast<std::size_t>(axis)])];
      weight *= rule.weights[static_cast<std::size_t>(odometer[static_cast<std::size_t>(axis)])];
      // Duffy factor (1-u)^(d-1-axis) is the Jacobian share of this axis
      for (int rep = 0; rep < d - 1 - axis; ++rep) weight *= 1.0 - u;
      p[static_cast<std::size_t>(axis)] = u * remaining;
      remaining *= 1.0 - u;
    }
    p[static_cast<std::size_t>(d)] = remaining;
    total += weight * f(p);
    ++evaluations;

    done = true;
    for (int axis = 0; axis < d; ++axis) {
      auto& digit = odometer[static_cast<std::size_t>(axis)];
      if (++digit < k) {
        done = false;
        break;
      }
      digit = 0;
    }
  }
  return total;
}

}  // namespace

QuadratureResult integrate_simplex(int d,
                                   const std::function<double(const std::vector<double>&)>& f,
                                   double rel_tol, int max_nodes_per_axis) {
  if (d < 0) throw ValidationError("integrate_simplex: d must be nonnegative");
  QuadratureResult result;
  if (d == 0) {
    result.value = f({1.0});
    result.converged = true;
    result.evaluations = 1;
    return result;
  }

  // The Duffy pass integrates against plain Lebesgue measure on the corner
  // simplex; the normalized measure is d! times that.
  double factorial = 1.0;
  for (int i = 2; i <= d; ++i) factorial *= i;

  double previous = 0.0;
  bool have_previous = false;
  for (int k = 4; k <= max_nodes_per_axis; k *= 2) {
    const GaussRule rule = gauss_legendre_01(k);
    const double value = factorial * duffy_pass(d, f, rule, result.evaluations);
    result.value = value;
    result.nodes_per_axis = k;
    if (have_previous) {
      result.abs_error = std::abs(value - previous);
      const double scale = std::max(std::abs(value), 1e-300);
      result.rel_error = result.abs_error / scale;
      if (result.rel_error <= rel_tol) {
        result.converged = true;
        return result;
      }
    }
    previous = value;
    have_previous = true;
  }
  return result;
}

}  // namespace bosegas
