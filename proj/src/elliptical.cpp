#include "depmod/elliptical.hpp"

#include <cmath>

#include "depmod/errors.hpp"

namespace depmod {

namespace {

std::vector<int> pivot_first_order(int pivot, const std::vector<int>& perm) {
  std::vector<int> order;
  order.reserve(perm.size() + 1);
  order.push_back(pivot);
  order.insert(order.end(), perm.begin(), perm.end());
  return order;
}

Eigen::VectorXd reorder(const Eigen::VectorXd& v,
                        const std::vector<int>& order) {
  Eigen::VectorXd out(v.size());
  for (int i = 0; i < static_cast<int>(order.size()); ++i) out[i] = v[order[i]];
  return out;
}

}  // namespace

DependencyModel gaussian_dm(const Eigen::VectorXd& mu,
                            const CovarianceMatrix& sigma, int pivot,
                            const std::vector<int>& perm) {
  const int d = sigma.dim();
  if (mu.size() != d) throw InvalidParams("gaussian_dm: mu size mismatch");
  validate_pivot_perm(d, pivot, perm);

  const auto order = pivot_first_order(pivot, perm);
  const Eigen::MatrixXd l = cholesky(permute_sym(sigma.sigma, order));
  const Eigen::VectorXd mu_o = reorder(mu, order);
  const double sd_pivot = std::sqrt(sigma.sigma(pivot, pivot));

  std::vector<Dist> latents;
  Eigen::VectorXd lat_mu(d - 1), lat_sd(d - 1);
  for (int k = 0; k < d - 1; ++k) {
    const int w = perm[k];
    latents.push_back(Dist::normal(mu[w], sigma.sigma(w, w)));
    lat_mu[k] = mu[w];
    lat_sd[k] = std::sqrt(sigma.sigma(w, w));
  }

  MapFn fn = [l, mu_o, lat_mu, lat_sd, sd_pivot,
              d](double x, const Eigen::VectorXd& z) {
    Eigen::VectorXd v(d);
    v[0] = (x - mu_o[0]) / sd_pivot;
    for (int k = 0; k < d - 1; ++k) v[k + 1] = (z[k] - lat_mu[k]) / lat_sd[k];
    const Eigen::VectorXd y = l * v + mu_o;
    return Eigen::VectorXd(y.tail(d - 1));
  };

  PivotLaw law;
  law.base = Dist::normal(mu[pivot], sigma.sigma(pivot, pivot));
  return DependencyModel("gaussian", d, pivot, perm, law, std::move(latents),
                         std::move(fn));
}

DependencyModel student_t_dm(double nu, const Eigen::VectorXd& mu,
                             const CovarianceMatrix& sigma, int pivot,
                             const std::vector<int>& perm) {
  if (!(nu > 0.0)) throw InvalidParams("student_t_dm: nu must be positive");
  const int d = sigma.dim();
  if (mu.size() != d) throw InvalidParams("student_t_dm: mu size mismatch");
  validate_pivot_perm(d, pivot, perm);

  const auto order = pivot_first_order(pivot, perm);
  const Eigen::MatrixXd l = cholesky(permute_sym(sigma.sigma, order));
  const Eigen::VectorXd mu_o = reorder(mu, order);
  const double sd_pivot = std::sqrt(sigma.sigma(pivot, pivot));

  std::vector<Dist> latents;
  for (int k = 0; k < d - 1; ++k)
    latents.push_back(Dist::student_t(nu + k + 1));

  // Nested product scale: the k-th standardized output is
  // sqrt((nu + y^2) * prod_{i<k}(nu + i + z_i^2) / prod_{i<=k}(nu + i)) * z_k.
  MapFn fn = [l, mu_o, nu, sd_pivot, d](double x, const Eigen::VectorXd& z) {
    Eigen::VectorXd v(d);
    const double yj = (x - mu_o[0]) / sd_pivot;
    v[0] = yj;
    double num = nu + yj * yj;
    double den = 1.0;
    for (int k = 0; k < d - 1; ++k) {
      den *= nu + (k + 1);
      v[k + 1] = std::sqrt(num / den) * z[k];
      num *= nu + (k + 1) + z[k] * z[k];
    }
    const Eigen::VectorXd y = l * v + mu_o;
    return Eigen::VectorXd(y.tail(d - 1));
  };

  PivotLaw law;
  law.base = Dist::student_t(nu);
  law.scale = sd_pivot;
  law.shift = mu[pivot];
  return DependencyModel("student_t", d, pivot, perm, law, std::move(latents),
                         std::move(fn));
}

DependencyModel cauchy_dm(const Eigen::VectorXd& mu,
                          const CovarianceMatrix& sigma, int pivot,
                          const std::vector<int>& perm) {
  const int d = sigma.dim();
  if (mu.size() != d) throw InvalidParams("cauchy_dm: mu size mismatch");
  validate_pivot_perm(d, pivot, perm);

  std::vector<Dist> latents;
  for (int k = 0; k < d - 1; ++k)
    latents.push_back(Dist::student_t(k + 2));

  MapFn fn = [d](double x, const Eigen::VectorXd& z) {
    Eigen::VectorXd out(d - 1);
    double s = 1.0 + x * x;
    for (int k = 0; k < d - 1; ++k) {
      out[k] = std::sqrt(s / (k + 2)) * z[k];
      s += out[k] * out[k];
    }
    return out;
  };

  PivotLaw law;
  law.base = Dist::cauchy();
  DependencyModel standard("cauchy", d, pivot, perm, law, std::move(latents),
                           std::move(fn));

  const auto order = pivot_first_order(pivot, perm);
  const Eigen::MatrixXd l = cholesky(permute_sym(sigma.sigma, order));
  return linear_lift(standard, l, reorder(mu, order)).renamed("cauchy");
}

}  // namespace depmod
