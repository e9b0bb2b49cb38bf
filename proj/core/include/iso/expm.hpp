#pragma once

#include <Eigen/Dense>

namespace iso {

// exp(A) by scaling and squaring with a diagonal Pade approximant of
// degree 3, 5, 7, 9 or 13 chosen from the 1-norm of A (Higham, 2005),
// evaluated in long double.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a);

// Max column sum.
double one_norm(const Eigen::MatrixXcd& a);

}  // namespace iso
