#pragma once

#include <Eigen/Dense>
#include <vector>

namespace depmod {

// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
// Throws NotPositiveDefinite when the factorization fails or a diagonal
// pivot is not strictly positive.
Eigen::MatrixXd cholesky(const Eigen::MatrixXd& sigma);

// Validated covariance matrix with its cached Cholesky factor.
struct CovarianceMatrix {
  Eigen::MatrixXd sigma;
  Eigen::MatrixXd chol;  // lower triangular, sigma = chol * chol^T

  int dim() const { return static_cast<int>(sigma.rows()); }

  // Checks symmetry (|s_ij - s_ji| <= 1e-12 * max(1, |s_ij|)) and positive
  // definiteness, then caches the factor.
  static CovarianceMatrix from(const Eigen::MatrixXd& sigma);
};

// P * m * P^T for the row order given by `order` (a permutation of 0..d-1).
Eigen::MatrixXd permute_sym(const Eigen::MatrixXd& m,
                            const std::vector<int>& order);

// Assembles a covariance matrix from standard deviations and a correlation
// matrix.
Eigen::MatrixXd covariance_from_correlations(const Eigen::VectorXd& sd,
                                             const Eigen::MatrixXd& corr);

}  // namespace depmod
