#ifndef BOSEGAS_TYPES_HPP
#define BOSEGAS_TYPES_HPP

#include <complex>
#include <Eigen/Dense>

namespace bosegas {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

}  // namespace bosegas

#endif
