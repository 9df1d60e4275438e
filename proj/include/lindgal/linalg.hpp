#pragma once

#include <Eigen/Dense>

namespace lindgal {

// Full SVD through LAPACK (zgesdd). Returns singular values in descending
// order; if v is non-null it receives the right singular vectors as columns.
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a, Eigen::MatrixXcd* v = nullptr);

}  // namespace lindgal
