#pragma once

#include "depmod/dm.hpp"
#include "depmod/linalg.hpp"

namespace depmod {

// Gaussian vector N(mu, sigma): affine chain through the Cholesky factor of
// sigma arranged in (pivot, perm...) order. Latent k follows
// N(mu[w_k], sigma[w_k][w_k]).
DependencyModel gaussian_dm(const Eigen::VectorXd& mu,
                            const CovarianceMatrix& sigma, int pivot,
                            const std::vector<int>& perm);

// Multivariate t with nu degrees of freedom; latent k follows t(nu + k + 1).
DependencyModel student_t_dm(double nu, const Eigen::VectorXd& mu,
                             const CovarianceMatrix& sigma, int pivot,
                             const std::vector<int>& perm);

// Multivariate Cauchy: the standard model uses the squared running-sum
// recursion h_k = sqrt(1 + x^2 + sum of previous outputs squared) and is
// lifted by the Cholesky factor of sigma.
DependencyModel cauchy_dm(const Eigen::VectorXd& mu,
                          const CovarianceMatrix& sigma, int pivot,
                          const std::vector<int>& perm);

}  // namespace depmod
