#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "depmod/distribution.hpp"
#include "depmod/dm.hpp"
#include "depmod/linalg.hpp"
#include "depmod/rng.hpp"

namespace depmod {

struct TestOutcome {
  double statistic = 0;
  double critical_value = 0;
  double level = 0;
  bool reject = false;
  long n_a = 0, n_b = 0;
};

enum class ConstraintKind { sum_eq, sum_lt, quad_eq, quad_lt };

struct ConstraintSpec {
  ConstraintKind kind = ConstraintKind::sum_lt;
  double c = 1.0;
  Eigen::VectorXd weights;  // empty means all ones
};

// Brute-force reference sampler: proposes from the product of the base laws
// and keeps rows satisfying the constraint; equality kinds accept a band
// |value - c| <= band_eps. Aborts with AcceptanceTooLow when the estimated
// acceptance probability falls below 1e-6. When n_proposals is given it
// receives the number of proposals drawn.
Eigen::MatrixXd rejection_sample(const std::vector<Dist>& base,
                                 const ConstraintSpec& constraint,
                                 double band_eps, long n, RngStream& rng,
                                 long* n_proposals = nullptr);

// Multivariate t via the scale mixture sqrt(W) * N(0, sigma) + mu with
// W inverse-gamma distributed.
Eigen::MatrixXd mixture_t_sample(double nu, const Eigen::VectorXd& mu,
                                 const CovarianceMatrix& sigma, long n,
                                 RngStream& rng);

// Uniform rows on (mode on) or inside (mode in) the radius-sqrt(c) sphere,
// from normalized Gaussians with radial inversion for the interior.
Eigen::MatrixXd sphere_oracle(int dim, double c, QuadMode mode, long n,
                              RngStream& rng);

// Gamma-normalization Dirichlet reference.
Eigen::MatrixXd dirichlet_oracle(const Eigen::VectorXd& a, long n,
                                 RngStream& rng);

// One-sample Kolmogorov-Smirnov test against a cdf (asymptotic critical
// value); requires n >= 100.
TestOutcome ks_test(std::vector<double> samples,
                    const std::function<double(double)>& cdf, double level);

// Two-sample Kolmogorov-Smirnov test (asymptotic critical value).
TestOutcome ks_two_sample(std::vector<double> a, std::vector<double> b,
                          double level);

// Two-sample energy distance test calibrated by a permutation null;
// requires at least 100 rows per side and 200 permutations. The critical
// value is the empirical (1 - level) quantile of the permuted statistics.
TestOutcome energy_test(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                        double level, int n_permutations, RngStream rng);

}  // namespace depmod
