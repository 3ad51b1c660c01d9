#pragma once

#include "depmod/dm.hpp"
#include "depmod/linalg.hpp"

namespace depmod {

// Independent Gamma(a_i, rate beta) variables under sum x_i = c (eq) or
// sum x_i < c (lt). The eq chain closes the sum exactly by subtraction-free
// stick-breaking; the lt chain keeps all d-1 outputs stochastic.
DependencyModel gamma_sum_dm(const Eigen::VectorXd& a, double beta, double c,
                             SumMode mode, int pivot,
                             const std::vector<int>& perm);

// Arbitrary continuous marginals F_i under sum_i G_i^{-1}(F_i(x_i)) = c,
// with G_i the Gamma(a_i, beta) cdfs: the gamma chain warped through
// F_i^{-1} o G_i per coordinate.
DependencyModel general_sum_dm(const std::vector<Dist>& marginals,
                               const Eigen::VectorXd& a, double beta, double c,
                               SumMode mode, int pivot,
                               const std::vector<int>& perm);

// Conditional covariance and mean of d-1 of the variables given the linear
// constraint, indexed in (pivot, perm[0..d-3]) order.
struct SigmaC {
  Eigen::MatrixXd cov;
  Eigen::VectorXd mean;
  std::vector<int> order;
};
SigmaC sigma_c(const Eigen::VectorXd& sigmas, double c, int pivot,
               const std::vector<int>& perm);

// Independent N(0, sigma_i^2) variables under sum x_i = c.
DependencyModel gaussian_linsum_dm(const Eigen::VectorXd& sigmas, double c,
                                   int pivot, const std::vector<int>& perm);

// Continuous marginals under sum_i sigma_i Phi^{-1}(F_i(x_i)) = c.
DependencyModel general_linsum_dm(const std::vector<Dist>& marginals,
                                  const Eigen::VectorXd& sigmas, double c,
                                  int pivot, const std::vector<int>& perm);

// Independent N(0,1) variables under sum x_i^2 = c (on) or < c (in).
DependencyModel gaussian_quad_dm(int dim, double c, QuadMode mode, int pivot,
                                 const std::vector<int>& perm);

// Continuous marginals under sum_i [Phi^{-1}(F_i(x_i))]^2 = c (or < c).
DependencyModel general_quad_dm(const std::vector<Dist>& marginals, double c,
                                QuadMode mode, int pivot,
                                const std::vector<int>& perm);

// N(0, sigma) conditioned on the ellipsoid y^T sigma^{-1} y = c: the
// on-sphere model lifted by the Cholesky factor of sigma.
DependencyModel elliptical_shell_dm(const CovarianceMatrix& sigma, double c,
                                    int pivot, const std::vector<int>& perm);

}  // namespace depmod
