#include "depmod/dm.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "depmod/errors.hpp"
#include "depmod/parallel.hpp"

namespace depmod {

double PivotLaw::sample(RngStream& rng) const {
  double v = depmod::sample(base, rng);
  if (sign) v = (rng.next_unit() < 0.5 ? -1.0 : 1.0) * v;
  v = shift + scale * v;
  if (warped) v = depmod::quantile(marginal, depmod::cdf(ref, v));
  return v;
}

double PivotLaw::cdf(double x) const {
  double v = x;
  if (warped) {
    const double u = depmod::cdf(marginal, x);
    if (u <= 0.0) return scale >= 0.0 ? 0.0 : 1.0;
    if (u >= 1.0) return scale >= 0.0 ? 1.0 : 0.0;
    v = depmod::quantile(ref, u);
  }
  const double t = (v - shift) / scale;
  double f;
  if (!sign) {
    f = depmod::cdf(base, t);
  } else {
    f = t >= 0.0 ? 0.5 * (1.0 + depmod::cdf(base, t))
                 : 0.5 * (1.0 - depmod::cdf(base, -t));
  }
  return scale >= 0.0 ? f : 1.0 - f;
}

double PivotLaw::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0))
    throw DomainError("pivot quantile: u must lie in (0,1)");
  const double uu = scale >= 0.0 ? u : 1.0 - u;
  double t;
  if (!sign) {
    t = depmod::quantile(base, uu);
  } else {
    t = uu >= 0.5 ? depmod::quantile(base, 2.0 * uu - 1.0)
                  : -depmod::quantile(base, 1.0 - 2.0 * uu);
  }
  double v = shift + scale * t;
  if (warped) v = depmod::quantile(marginal, depmod::cdf(ref, v));
  return v;
}

std::pair<double, double> PivotLaw::support() const {
  if (warped) return depmod::support(marginal);
  auto [lo, hi] = depmod::support(base);
  if (sign) lo = -hi;
  double a = shift + scale * lo;
  double b = shift + scale * hi;
  if (a > b) std::swap(a, b);
  return {a, b};
}

bool PivotLaw::finite_variance() const {
  if (warped) return depmod::finite_variance(marginal);
  return depmod::finite_variance(base);
}

std::string PivotLaw::describe() const {
  std::ostringstream os;
  if (sign) os << "sign*";
  os << to_string(base);
  if (scale != 1.0 || shift != 0.0) os << " *" << scale << " +" << shift;
  if (warped) os << " -> " << to_string(marginal);
  return os.str();
}

DependencyModel::DependencyModel(std::string family, int dim, int pivot,
                                 std::vector<int> perm, PivotLaw pivot_law,
                                 std::vector<Dist> latents, MapFn map)
    : family_(std::move(family)),
      dim_(dim),
      pivot_(pivot),
      perm_(std::move(perm)),
      pivot_law_(std::move(pivot_law)),
      latents_(std::move(latents)),
      map_(std::move(map)) {
  validate_pivot_perm(dim_, pivot_, perm_);
}

double DependencyModel::sample_latent(int k, RngStream& rng) const {
  return depmod::sample(latents_[k], rng);
}

Eigen::VectorXd DependencyModel::sample_latents(RngStream& rng) const {
  Eigen::VectorXd z(n_latents());
  for (int k = 0; k < n_latents(); ++k) z[k] = depmod::sample(latents_[k], rng);
  return z;
}

bool DependencyModel::finite_variance_inputs() const {
  if (!pivot_law_.finite_variance()) return false;
  for (const Dist& d : latents_)
    if (!finite_variance(d)) return false;
  return true;
}

Eigen::VectorXd push_forward(const DependencyModel& m, double x_pivot,
                             const Eigen::VectorXd& z) {
  const auto [plo, phi] = m.pivot_law().support();
  if (!(x_pivot > plo && x_pivot < phi))
    throw DomainError("push_forward: pivot value outside support");
  if (z.size() != m.n_latents())
    throw DomainError("push_forward: latent vector has wrong length");
  for (int k = 0; k < m.n_latents(); ++k) {
    const Dist& law = m.latent_law(k);
    if (law.family == Family::rademacher) {
      if (z[k] != 1.0 && z[k] != -1.0)
        throw DomainError("push_forward: sign latent must be +/-1");
      continue;
    }
    const auto [lo, hi] = support(law);
    if (!(z[k] > lo && z[k] < hi))
      throw DomainError("push_forward: latent value outside support");
  }
  return m.map(x_pivot, z);
}

SampleBatch sample_batch(const DependencyModel& m, long n, RngStream& rng) {
  if (n < 1) throw InvalidParams("sample_batch: n must be at least 1");
  const RngStream base = rng.split();
  SampleBatch out;
  out.seed = rng.seed();
  out.values.resize(n, m.dim());
  parallel_for(n, [&](long i) {
    RngStream g = base.derive(static_cast<std::uint64_t>(i));
    const double x = m.sample_pivot(g);
    const Eigen::VectorXd z = m.sample_latents(g);
    const Eigen::VectorXd y = m.map(x, z);
    out.values(i, m.pivot()) = x;
    for (int k = 0; k < m.dim() - 1; ++k) out.values(i, m.perm()[k]) = y[k];
  });
  return out;
}

DependencyModel linear_lift(const DependencyModel& m, const Eigen::MatrixXd& t,
                            const Eigen::VectorXd& mu) {
  const int d = m.dim();
  if (t.rows() != d || t.cols() != d || mu.size() != d)
    throw InvalidParams("linear_lift: dimension mismatch");
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (t(i, j) != 0.0)
        throw InvalidParams("linear_lift: matrix must be lower triangular");
  if (t(0, 0) == 0.0)
    throw SingularLift("linear_lift: pivot diagonal entry is zero");

  PivotLaw lifted = m.pivot_law();
  if (lifted.warped)
    throw InvalidParams("linear_lift: warped pivot laws are not liftable");
  lifted.shift = t(0, 0) * lifted.shift + mu[0];
  lifted.scale = t(0, 0) * lifted.scale;

  auto base = std::make_shared<DependencyModel>(m);
  const Eigen::MatrixXd tt = t;
  const Eigen::VectorXd mm = mu;
  MapFn fn = [base, tt, mm, d](double y_pivot, const Eigen::VectorXd& z) {
    const double x = (y_pivot - mm[0]) / tt(0, 0);
    const Eigen::VectorXd inner = base->map(x, z);
    Eigen::VectorXd v(d);
    v[0] = x;
    v.tail(d - 1) = inner;
    const Eigen::VectorXd y = tt * v + mm;
    return Eigen::VectorXd(y.tail(d - 1));
  };

  std::vector<Dist> latents;
  latents.reserve(m.n_latents());
  for (int k = 0; k < m.n_latents(); ++k) latents.push_back(m.latent_law(k));
  return DependencyModel(m.family() + "+lift", d, m.pivot(), m.perm(),
                         std::move(lifted), std::move(latents), std::move(fn));
}

DependencyModel chain_from_conditionals(
    int dim, int pivot, std::vector<int> perm, PivotLaw pivot_law,
    std::vector<ConditionalQuantile> cond) {
  validate_pivot_perm(dim, pivot, perm);
  if (static_cast<int>(cond.size()) != dim - 1)
    throw InvalidParams("chain_from_conditionals: need d-1 callbacks");

  auto steps = std::make_shared<std::vector<ConditionalQuantile>>(
      std::move(cond));
  MapFn fn = [steps, dim](double x, const Eigen::VectorXd& z) {
    Eigen::VectorXd out(dim - 1);
    for (int k = 0; k < dim - 1; ++k)
      out[k] = (*steps)[k](z[k], x, out.head(k));
    return out;
  };

  // Spot-check monotonicity in the probability argument along a few
  // realized prefixes.
  RngStream probe(0xC0FFEEULL);
  for (int rep = 0; rep < 4; ++rep) {
    const double x = pivot_law.sample(probe);
    Eigen::VectorXd out(dim - 1);
    for (int k = 0; k < dim - 1; ++k) {
      double prev = -std::numeric_limits<double>::infinity();
      for (double u = 0.05; u < 1.0; u += 0.09) {
        const double v = (*steps)[k](u, x, out.head(k));
        if (v < prev - 1e-12)
          throw MonotonicityViolation(
              "chain_from_conditionals: callback decreases in u");
        prev = v;
      }
      out[k] = (*steps)[k](probe.next_unit(), x, out.head(k));
    }
  }

  std::vector<Dist> latents(dim - 1, Dist::uniform(0.0, 1.0));
  return DependencyModel("chain", dim, pivot, std::move(perm),
                         std::move(pivot_law), std::move(latents),
                         std::move(fn));
}

void validate_pivot_perm(int dim, int pivot, const std::vector<int>& perm) {
  if (dim < 1) throw InvalidParams("model: dimension must be at least 1");
  if (pivot < 0 || pivot >= dim)
    throw InvalidParams("model: pivot index out of range");
  if (static_cast<int>(perm.size()) != dim - 1)
    throw InvalidParams("model: perm must list the d-1 remaining indices");
  std::vector<bool> seen(dim, false);
  seen[pivot] = true;
  for (int w : perm) {
    if (w < 0 || w >= dim) throw InvalidParams("model: perm index out of range");
    if (seen[w]) throw InvalidParams("model: perm repeats an index");
    seen[w] = true;
  }
}

std::vector<int> natural_perm(int dim, int pivot) {
  std::vector<int> perm;
  perm.reserve(dim - 1);
  for (int i = 0; i < dim; ++i)
    if (i != pivot) perm.push_back(i);
  return perm;
}

}  // namespace depmod
