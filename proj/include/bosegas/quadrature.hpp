#ifndef BOSEGAS_QUADRATURE_HPP
#define BOSEGAS_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace bosegas {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // estimated, from the last refinement step
  double rel_error = 0.0;
  bool converged = false;
  int nodes_per_axis = 0;
  std::size_t evaluations = 0;
};

// Gauss-Legendre nodes and weights on [0, 1] (Golub-Welsch).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre_01(int points);

// Integral of f over the d-dimensional probability simplex with respect to
// the NORMALIZED Lebesgue measure (total mass 1).  f receives all d+1
// barycentric coordinates.  Uses the Duffy-type map from the unit cube with
// tensorized Gauss rules, doubling the order until the relative change is
// below rel_tol.
QuadratureResult integrate_simplex(int d,
                                   const std::function<double(const std::vector<double>&)>& f,
                                   double rel_tol = 1e-8, int max_nodes_per_axis = 256);

}  // namespace bosegas

#endif
