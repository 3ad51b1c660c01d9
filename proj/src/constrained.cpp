#include "depmod/constrained.hpp"

#include <cmath>
#include <memory>

#include "depmod/errors.hpp"

namespace depmod {

namespace {

void check_marginals(const std::vector<Dist>& marginals, int d,
                     const char* who) {
  if (static_cast<int>(marginals.size()) != d)
    throw InvalidParams(std::string(who) + ": need one marginal per coordinate");
  for (const Dist& m : marginals)
    if (!is_continuous(m))
      throw InvalidParams(std::string(who) + ": marginals must be continuous");
}

double warp(const Dist& marginal, const Dist& ref, double v) {
  try {
    return quantile(marginal, cdf(ref, v));
  } catch (const BracketError& e) {
    throw QuantileBracketError(e.what());
  }
}

}  // namespace

DependencyModel gamma_sum_dm(const Eigen::VectorXd& a, double beta, double c,
                             SumMode mode, int pivot,
                             const std::vector<int>& perm) {
  const int d = static_cast<int>(a.size());
  if (d < 2) throw InvalidParams("gamma_sum_dm: dimension must be >= 2");
  validate_pivot_perm(d, pivot, perm);
  if ((a.array() <= 0.0).any())
    throw InvalidParams("gamma_sum_dm: shapes must be positive");
  if (!(beta > 0.0)) throw InvalidParams("gamma_sum_dm: rate must be positive");
  if (!(c > 0.0)) throw InvalidParams("gamma_sum_dm: c must be positive");

  const double bump = mode == SumMode::lt ? 1.0 : 0.0;
  double tail = 0.0;
  for (int w : perm) tail += a[w];

  PivotLaw law;
  law.base = Dist::b1(c, a[pivot], tail + bump);

  const int n_chain = mode == SumMode::eq ? d - 2 : d - 1;
  std::vector<Dist> latents;
  for (int i = 0; i < n_chain; ++i) {
    tail -= a[perm[i]];
    latents.push_back(Dist::beta(a[perm[i]], tail + bump));
  }

  const bool closed = mode == SumMode::eq;
  MapFn fn = [d, c, closed](double x, const Eigen::VectorXd& z) {
    Eigen::VectorXd out(d - 1);
    double stick = c - x;
    const int n = closed ? d - 2 : d - 1;
    for (int k = 0; k < n; ++k) {
      out[k] = z[k] * stick;
      stick *= 1.0 - z[k];
    }
    if (closed) out[d - 2] = stick;
    return out;
  };

  return DependencyModel("gamma_sum", d, pivot, perm, law, std::move(latents),
                         std::move(fn));
}

DependencyModel general_sum_dm(const std::vector<Dist>& marginals,
                               const Eigen::VectorXd& a, double beta, double c,
                               SumMode mode, int pivot,
                               const std::vector<int>& perm) {
  const int d = static_cast<int>(a.size());
  check_marginals(marginals, d, "general_sum_dm");
  DependencyModel raw = gamma_sum_dm(a, beta, c, mode, pivot, perm);

  std::vector<Dist> refs;
  refs.reserve(d - 1);
  for (int w : perm) refs.push_back(Dist::gamma(a[w], beta));
  std::vector<Dist> out_marginals;
  out_marginals.reserve(d - 1);
  for (int w : perm) out_marginals.push_back(marginals[w]);

  PivotLaw law = raw.pivot_law();
  law.warped = true;
  law.ref = Dist::gamma(a[pivot], beta);
  law.marginal = marginals[pivot];

  const Dist pivot_ref = law.ref;
  const Dist pivot_marginal = law.marginal;
  auto base = std::make_shared<DependencyModel>(std::move(raw));
  MapFn fn = [base, refs, out_marginals, pivot_ref,
              pivot_marginal](double x, const Eigen::VectorXd& z) {
    const double v = warp(pivot_ref, pivot_marginal, x);  // back to gamma scale
    Eigen::VectorXd y = base->map(v, z);
    for (int k = 0; k < y.size(); ++k)
      y[k] = warp(out_marginals[k], refs[k], y[k]);
    return y;
  };

  std::vector<Dist> latents;
  for (int k = 0; k < base->n_latents(); ++k)
    latents.push_back(base->latent_law(k));
  return DependencyModel("general_sum", d, pivot, perm, law,
                         std::move(latents), std::move(fn));
}

SigmaC sigma_c(const Eigen::VectorXd& sigmas, double c, int pivot,
               const std::vector<int>& perm) {
  const int d = static_cast<int>(sigmas.size());
  validate_pivot_perm(d, pivot, perm);
  if ((sigmas.array() <= 0.0).any())
    throw InvalidParams("sigma_c: standard deviations must be positive");

  double total = 0.0;
  for (int k = 0; k < d; ++k) total += sigmas[k] * sigmas[k];

  SigmaC out;
  out.order.push_back(pivot);
  for (int i = 0; i < d - 2; ++i) out.order.push_back(perm[i]);
  const int m = static_cast<int>(out.order.size());
  out.cov.resize(m, m);
  out.mean.resize(m);
  for (int i = 0; i < m; ++i) {
    const double si2 = sigmas[out.order[i]] * sigmas[out.order[i]];
    out.mean[i] = c * si2 / total;
    for (int l = 0; l < m; ++l) {
      const double sl2 = sigmas[out.order[l]] * sigmas[out.order[l]];
      out.cov(i, l) = i == l ? si2 * (total - si2) / total : -si2 * sl2 / total;
    }
  }
  return out;
}

DependencyModel gaussian_linsum_dm(const Eigen::VectorXd& sigmas, double c,
                                   int pivot, const std::vector<int>& perm) {
  const int d = static_cast<int>(sigmas.size());
  if (d < 2) throw InvalidParams("gaussian_linsum_dm: dimension must be >= 2");
  validate_pivot_perm(d, pivot, perm);

  SigmaC sc = sigma_c(sigmas, c, pivot, perm);
  const Eigen::MatrixXd l = cholesky(sc.cov);
  const Eigen::VectorXd mean = sc.mean;
  const double sd_pivot = std::sqrt(sc.cov(0, 0));

  std::vector<Dist> latents(d - 2, Dist::normal(0.0, 1.0));
  MapFn fn = [l, mean, sd_pivot, c, d](double x, const Eigen::VectorXd& z) {
    Eigen::VectorXd v(d - 1);
    v[0] = (x - mean[0]) / sd_pivot;
    v.tail(d - 2) = z;
    const Eigen::VectorXd y = l * v + mean;
    Eigen::VectorXd out(d - 1);
    out.head(d - 2) = y.tail(d - 2);
    double rest = c - x;
    for (int k = 0; k < d - 2; ++k) rest -= out[k];
    out[d - 2] = rest;
    return out;
  };

  PivotLaw law;
  law.base = Dist::normal(mean[0], sc.cov(0, 0));
  return DependencyModel("gaussian_linsum", d, pivot, perm, law,
                         std::move(latents), std::move(fn));
}

DependencyModel general_linsum_dm(const std::vector<Dist>& marginals,
                                  const Eigen::VectorXd& sigmas, double c,
                                  int pivot, const std::vector<int>& perm) {
  const int d = static_cast<int>(sigmas.size());
  check_marginals(marginals, d, "general_linsum_dm");
  DependencyModel raw = gaussian_linsum_dm(sigmas, c, pivot, perm);

  std::vector<Dist> refs;
  std::vector<Dist> out_marginals;
  for (int w : perm) {
    refs.push_back(Dist::normal(0.0, sigmas[w] * sigmas[w]));
    out_marginals.push_back(marginals[w]);
  }

  PivotLaw law = raw.pivot_law();
  law.warped = true;
  law.ref = Dist::normal(0.0, sigmas[pivot] * sigmas[pivot]);
  law.marginal = marginals[pivot];

  const Dist pivot_ref = law.ref;
  const Dist pivot_marginal = law.marginal;
  auto base = std::make_shared<DependencyModel>(std::move(raw));
  MapFn fn = [base, refs, out_marginals, pivot_ref,
              pivot_marginal](double x, const Eigen::VectorXd& z) {
    const double v = warp(pivot_ref, pivot_marginal, x);
    Eigen::VectorXd y = base->map(v, z);
    for (int k = 0; k < y.size(); ++k)
      y[k] = warp(out_marginals[k], refs[k], y[k]);
    return y;
  };

  std::vector<Dist> latents;
  for (int k = 0; k < base->n_latents(); ++k)
    latents.push_back(base->latent_law(k));
  return DependencyModel("general_linsum", d, pivot, perm, law,
                         std::move(latents), std::move(fn));
}

DependencyModel gaussian_quad_dm(int dim, double c, QuadMode mode, int pivot,
                                 const std::vector<int>& perm) {
  if (dim < 2) throw InvalidParams("gaussian_quad_dm: dimension must be >= 2");
  validate_pivot_perm(dim, pivot, perm);
  if (!(c > 0.0)) throw InvalidParams("gaussian_quad_dm: c must be positive");

  const bool closed = mode == QuadMode::on;
  const double root_c = std::sqrt(c);
  const int n_chain = closed ? dim - 2 : dim - 1;

  // Squared coordinates follow the constrained-gamma chain with shapes 1/2;
  // the in-sphere case adds one to each second shape.
  const double bump = closed ? 0.0 : 1.0;
  std::vector<Dist> latents;
  for (int i = 0; i < n_chain; ++i)
    latents.push_back(
        Dist::gb1(2.0, 1.0, 0.5, 0.5 * (dim - i - 2) + bump));
  for (int k = 0; k < dim - 1; ++k) latents.push_back(Dist::rademacher());

  MapFn fn = [dim, c, closed, n_chain](double x, const Eigen::VectorXd& z) {
    Eigen::VectorXd out(dim - 1);
    double stick = c - x * x;
    if (stick < 0.0) stick = 0.0;
    for (int k = 0; k < n_chain; ++k) {
      const double s = z[n_chain + k];
      out[k] = s * z[k] * std::sqrt(stick);
      stick *= 1.0 - z[k] * z[k];
    }
    if (closed) out[dim - 2] = z[2 * n_chain] * std::sqrt(stick);
    return out;
  };

  PivotLaw law;
  law.base = Dist::gb1(2.0, root_c, 0.5, 0.5 * (dim - 1) + bump);
  law.sign = true;
  return DependencyModel("gaussian_quad", dim, pivot, perm, law,
                         std::move(latents), std::move(fn));
}

DependencyModel general_quad_dm(const std::vector<Dist>& marginals, double c,
                                QuadMode mode, int pivot,
                                const std::vector<int>& perm) {
  const int d = static_cast<int>(marginals.size());
  check_marginals(marginals, d, "general_quad_dm");
  DependencyModel raw = gaussian_quad_dm(d, c, mode, pivot, perm);

  const Dist std_normal = Dist::normal(0.0, 1.0);
  std::vector<Dist> out_marginals;
  for (int w : perm) out_marginals.push_back(marginals[w]);

  PivotLaw law = raw.pivot_law();
  law.warped = true;
  law.ref = std_normal;
  law.marginal = marginals[pivot];

  const Dist pivot_marginal = law.marginal;
  auto base = std::make_shared<DependencyModel>(std::move(raw));
  MapFn fn = [base, out_marginals, std_normal,
              pivot_marginal](double x, const Eigen::VectorXd& z) {
    const double v = warp(std_normal, pivot_marginal, x);
    Eigen::VectorXd y = base->map(v, z);
    for (int k = 0; k < y.size(); ++k)
      y[k] = warp(out_marginals[k], std_normal, y[k]);
    return y;
  };

  std::vector<Dist> latents;
  for (int k = 0; k < base->n_latents(); ++k)
    latents.push_back(base->latent_law(k));
  return DependencyModel("general_quad", d, pivot, perm, law,
                         std::move(latents), std::move(fn));
}

DependencyModel elliptical_shell_dm(const CovarianceMatrix& sigma, double c,
                                    int pivot, const std::vector<int>& perm) {
  const int d = sigma.dim();
  validate_pivot_perm(d, pivot, perm);
  if (!(c > 0.0)) throw InvalidParams("elliptical_shell_dm: c must be positive");

  DependencyModel standard = gaussian_quad_dm(d, c, QuadMode::on, pivot, perm);
  std::vector<int> order;
  order.push_back(pivot);
  order.insert(order.end(), perm.begin(), perm.end());
  const Eigen::MatrixXd l = cholesky(permute_sym(sigma.sigma, order));
  return linear_lift(standard, l, Eigen::VectorXd::Zero(d))
      .renamed("elliptical_shell");
}

}  // namespace depmod
