#include "depmod/simplex.hpp"

#include <cmath>

#include "depmod/errors.hpp"

namespace depmod {

namespace {

void check_positive(const Eigen::VectorXd& v, const char* what) {
  if ((v.array() <= 0.0).any()) throw InvalidParams(what);
}

// Chain beta parameters for the stick-breaking construction truncated to
// the first n_chain outputs: latent i pairs a[w_i] with
// b[w_i] + sum_{k>i, k<n_chain} (a[w_k] + b[w_k] - 1).
struct ChainLaws {
  Dist pivot;
  std::vector<Dist> latents;
};

ChainLaws gd_chain_laws(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                        int pivot, const std::vector<int>& perm,
                        int n_chain) {
  double tail = 0.0;
  for (int k = 0; k < n_chain; ++k) tail += a[perm[k]] + b[perm[k]] - 1.0;
  if (!(b[pivot] + tail > 0.0))
    throw InvalidParams("gd chain: pivot beta parameter is not positive");
  ChainLaws laws;
  laws.pivot = Dist::beta(a[pivot], b[pivot] + tail);
  for (int i = 0; i < n_chain; ++i) {
    tail -= a[perm[i]] + b[perm[i]] - 1.0;
    if (!(b[perm[i]] + tail > 0.0))
      throw InvalidParams("gd chain: latent beta parameter is not positive");
    laws.latents.push_back(Dist::beta(a[perm[i]], b[perm[i]] + tail));
  }
  return laws;
}

DependencyModel pgd_impl(double p, const Eigen::VectorXd& a,
                         const Eigen::VectorXd& b, int pivot,
                         const std::vector<int>& perm, bool signs,
                         const std::string& family) {
  const int d = static_cast<int>(a.size());
  validate_pivot_perm(d, pivot, perm);
  if (!(p > 0.0)) throw InvalidParams("pgd: p must be positive");
  check_positive(a, "pgd: a must be positive componentwise");
  check_positive(b, "pgd: b must be positive componentwise");

  ChainLaws laws = gd_chain_laws(a, b, pivot, perm, d - 1);
  std::vector<Dist> latents = laws.latents;
  if (signs)
    for (int k = 0; k < d - 1; ++k) latents.push_back(Dist::rademacher());

  const double inv_p = 1.0 / p;
  MapFn fn = [d, p, inv_p, signs](double x, const Eigen::VectorXd& z) {
    Eigen::VectorXd out(d - 1);
    double stick = 1.0 - std::pow(std::abs(x), p);
    for (int k = 0; k < d - 1; ++k) {
      const double s = signs ? z[d - 1 + k] : 1.0;
      out[k] = s * std::pow(z[k] * stick, inv_p);
      stick *= 1.0 - z[k];
    }
    return out;
  };

  PivotLaw law;
  law.base = Dist::gb1(p, 1.0, laws.pivot.p0, laws.pivot.p1);
  law.sign = signs;
  return DependencyModel(family, d, pivot, perm, law, std::move(latents),
                         std::move(fn));
}

DependencyModel pgd_sphere_impl(double p, const Eigen::VectorXd& a,
                                const Eigen::VectorXd& b, int pivot,
                                const std::vector<int>& perm, bool signs,
                                const std::string& family) {
  const int d = static_cast<int>(a.size());
  validate_pivot_perm(d, pivot, perm);
  if (d < 2) throw InvalidParams("pgd sphere: dimension must be at least 2");
  if (!(p > 0.0)) throw InvalidParams("pgd sphere: p must be positive");
  check_positive(a, "pgd sphere: a must be positive componentwise");
  check_positive(b, "pgd sphere: b must be positive componentwise");

  ChainLaws laws = gd_chain_laws(a, b, pivot, perm, d - 2);
  std::vector<Dist> latents = laws.latents;  // d-2 chain betas
  if (signs)
    for (int k = 0; k < d - 1; ++k) latents.push_back(Dist::rademacher());

  const double inv_p = 1.0 / p;
  MapFn fn = [d, p, inv_p, signs](double x, const Eigen::VectorXd& z) {
    Eigen::VectorXd out(d - 1);
    double stick = 1.0 - std::pow(std::abs(x), p);
    for (int k = 0; k < d - 2; ++k) {
      const double s = signs ? z[d - 2 + k] : 1.0;
      out[k] = s * std::pow(z[k] * stick, inv_p);
      stick *= 1.0 - z[k];
    }
    const double s = signs ? z[2 * d - 4] : 1.0;
    out[d - 2] = s * std::pow(stick, inv_p);
    return out;
  };

  PivotLaw law;
  law.base = Dist::gb1(p, 1.0, laws.pivot.p0, laws.pivot.p1);
  law.sign = signs;
  return DependencyModel(family, d, pivot, perm, law, std::move(latents),
                         std::move(fn));
}

}  // namespace

DependencyModel gd_dm(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                      int pivot, const std::vector<int>& perm,
                      bool reparam_initial_marginals) {
  const int d = static_cast<int>(a.size());
  if (b.size() != d) throw InvalidParams("gd_dm: a and b sizes differ");
  validate_pivot_perm(d, pivot, perm);
  check_positive(a, "gd_dm: a must be positive componentwise");
  check_positive(b, "gd_dm: b must be positive componentwise");

  ChainLaws laws = gd_chain_laws(a, b, pivot, perm, d - 1);

  std::vector<Dist> latents;
  std::vector<Dist> chain = laws.latents;
  if (!reparam_initial_marginals) {
    latents = chain;
  } else {
    // Alternative inputs: the full-vector beta marginal of each coordinate,
    // warped to the chain law inside the map.
    double total = 0.0;
    for (int k = 0; k < d; ++k) total += a[k] + b[k] - 1.0;
    for (int i = 0; i < d - 1; ++i) {
      const int w = perm[i];
      const double second = b[w] + total - (a[w] + b[w] - 1.0);
      if (!(second > 0.0))
        throw InvalidParams("gd_dm: marginal beta parameter is not positive");
      latents.push_back(Dist::beta(a[w], second));
    }
  }

  MapFn fn = [d, reparam_initial_marginals, chain,
              latents](double x, const Eigen::VectorXd& z) {
    Eigen::VectorXd out(d - 1);
    double stick = 1.0 - x;
    for (int k = 0; k < d - 1; ++k) {
      double zk = z[k];
      if (reparam_initial_marginals)
        zk = quantile(chain[k], cdf(latents[k], zk));
      out[k] = zk * stick;
      stick *= 1.0 - zk;
    }
    return out;
  };

  PivotLaw law;
  law.base = laws.pivot;
  return DependencyModel("gd", d, pivot, perm, law, std::move(latents),
                         std::move(fn));
}

DependencyModel pgd_dm(double p, const Eigen::VectorXd& a,
                       const Eigen::VectorXd& b, int pivot,
                       const std::vector<int>& perm) {
  if (a.size() != b.size()) throw InvalidParams("pgd_dm: a and b sizes differ");
  return pgd_impl(p, a, b, pivot, perm, true, "pgd");
}

DependencyModel pgd_sphere_dm(double p, const Eigen::VectorXd& a,
                              const Eigen::VectorXd& b, int pivot,
                              const std::vector<int>& perm) {
  if (a.size() != b.size())
    throw InvalidParams("pgd_sphere_dm: a and b sizes differ");
  return pgd_sphere_impl(p, a, b, pivot, perm, true, "pgd_sphere");
}

DependencyModel uniform_pball_dm(double p, int dim, int pivot,
                                 const std::vector<int>& perm,
                                 Orthant orthant) {
  if (dim < 1) throw InvalidParams("uniform_pball_dm: dimension must be >= 1");
  const Eigen::VectorXd a = Eigen::VectorXd::Constant(dim, 1.0 / p);
  const Eigen::VectorXd b = Eigen::VectorXd::Ones(dim);
  return pgd_impl(p, a, b, pivot, perm, orthant == Orthant::all,
                  "uniform_pball");
}

DependencyModel uniform_psphere_dm(double p, int dim, int pivot,
                                   const std::vector<int>& perm,
                                   Orthant orthant) {
  if (dim < 2)
    throw InvalidParams("uniform_psphere_dm: dimension must be >= 2");
  const Eigen::VectorXd a = Eigen::VectorXd::Constant(dim, 1.0 / p);
  const Eigen::VectorXd b = Eigen::VectorXd::Ones(dim);
  return pgd_sphere_impl(p, a, b, pivot, perm, orthant == Orthant::all,
                         "uniform_psphere");
}

}  // namespace depmod
