#pragma once

#include <Eigen/Dense>

namespace expflow {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// exp(t A) by scaling and squaring with the degree-13 Pade approximant.
Matrix matrix_exp(const Matrix& a, double t = 1.0);

}  // namespace expflow
