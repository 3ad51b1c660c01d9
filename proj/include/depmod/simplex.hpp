#pragma once

#include "depmod/dm.hpp"

namespace depmod {

// Generalized Dirichlet GD(a, b), parameters attached per coordinate and the
// law read in (pivot, perm...) order. Stick-breaking chain with
// beta-distributed pivot and latents. When reparam_initial_marginals is set,
// each latent is drawn from the corresponding full-vector marginal and
// warped to the chain law inside the map (same law, alternative inputs).
DependencyModel gd_dm(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                      int pivot, const std::vector<int>& perm,
                      bool reparam_initial_marginals = false);

// p-generalized Dirichlet on the open unit p-ball: GD chain on the p-th
// powers, independent random signs per coordinate.
DependencyModel pgd_dm(double p, const Eigen::VectorXd& a,
                       const Eigen::VectorXd& b, int pivot,
                       const std::vector<int>& perm);

// p-generalized Dirichlet on the unit p-sphere: truncated chain with the
// last coordinate closing sum |x_k|^p = 1.
DependencyModel pgd_sphere_dm(double p, const Eigen::VectorXd& a,
                              const Eigen::VectorXd& b, int pivot,
                              const std::vector<int>& perm);

// Uniform law on the unit p-ball (all orthants or the positive one).
DependencyModel uniform_pball_dm(double p, int dim, int pivot,
                                 const std::vector<int>& perm,
                                 Orthant orthant);

// Uniform law on the unit p-sphere; p=1 positive is the simplex.
DependencyModel uniform_psphere_dm(double p, int dim, int pivot,
                                   const std::vector<int>& perm,
                                   Orthant orthant);

}  // namespace depmod
