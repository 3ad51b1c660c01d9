#include "depmod/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "depmod/errors.hpp"
#include "depmod/parallel.hpp"
#include "depmod/special.hpp"

namespace depmod {

namespace {

double constraint_value(const ConstraintSpec& cs, const Eigen::VectorXd& row) {
  double v = 0.0;
  const bool quad = cs.kind == ConstraintKind::quad_eq ||
                    cs.kind == ConstraintKind::quad_lt;
  for (Eigen::Index k = 0; k < row.size(); ++k) {
    const double w = cs.weights.size() > 0 ? cs.weights[k] : 1.0;
    v += w * (quad ? row[k] * row[k] : row[k]);
  }
  return v;
}

bool accepts(const ConstraintSpec& cs, double value, double band_eps) {
  switch (cs.kind) {
    case ConstraintKind::sum_eq:
    case ConstraintKind::quad_eq:
      return std::abs(value - cs.c) <= band_eps;
    case ConstraintKind::sum_lt:
    case ConstraintKind::quad_lt:
      return value < cs.c;
  }
  return false;
}

double ks_asymptotic_critical(double level, double effective_n) {
  return std::sqrt(-0.5 * std::log(level / 2.0)) / std::sqrt(effective_n);
}

}  // namespace

Eigen::MatrixXd rejection_sample(const std::vector<Dist>& base,
                                 const ConstraintSpec& constraint,
                                 double band_eps, long n, RngStream& rng,
                                 long* n_proposals) {
  const int d = static_cast<int>(base.size());
  if (d < 1) throw InvalidParams("rejection_sample: empty base");
  if (constraint.weights.size() > 0 && constraint.weights.size() != d)
    throw InvalidParams("rejection_sample: weight size mismatch");

  Eigen::MatrixXd out(n, d);
  Eigen::VectorXd row(d);
  long accepted = 0;
  long proposals = 0;
  while (accepted < n) {
    for (int k = 0; k < d; ++k) row[k] = sample(base[k], rng);
    ++proposals;
    if (accepts(constraint, constraint_value(constraint, row), band_eps)) {
      out.row(accepted++) = row;
    }
    if (proposals % 1000000 == 0 &&
        static_cast<double>(accepted + 1) / proposals < 1e-6) {
      throw AcceptanceTooLow("rejection_sample: acceptance below 1e-6");
    }
  }
  if (n_proposals != nullptr) *n_proposals = proposals;
  return out;
}

Eigen::MatrixXd mixture_t_sample(double nu, const Eigen::VectorXd& mu,
                                 const CovarianceMatrix& sigma, long n,
                                 RngStream& rng) {
  if (!(nu > 0.0)) throw InvalidParams("mixture_t_sample: nu must be positive");
  const int d = sigma.dim();
  if (mu.size() != d) throw InvalidParams("mixture_t_sample: mu size mismatch");
  const Dist ig = Dist::inverse_gamma(0.5 * nu, 0.5 * nu);
  Eigen::MatrixXd out(n, d);
  Eigen::VectorXd z(d);
  for (long i = 0; i < n; ++i) {
    const double w = sample(ig, rng);
    for (int k = 0; k < d; ++k)
      z[k] = special::normal_quantile(rng.next_unit());
    out.row(i) = (std::sqrt(w) * (sigma.chol * z) + mu).transpose();
  }
  return out;
}

Eigen::MatrixXd sphere_oracle(int dim, double c, QuadMode mode, long n,
                              RngStream& rng) {
  if (dim < 2) throw InvalidParams("sphere_oracle: dimension must be >= 2");
  if (!(c > 0.0)) throw InvalidParams("sphere_oracle: c must be positive");
  const double root_c = std::sqrt(c);
  Eigen::MatrixXd out(n, dim);
  Eigen::VectorXd z(dim);
  for (long i = 0; i < n; ++i) {
    for (int k = 0; k < dim; ++k)
      z[k] = special::normal_quantile(rng.next_unit());
    double r = root_c / z.norm();
    if (mode == QuadMode::in)
      r *= std::pow(rng.next_unit(), 1.0 / dim);
    out.row(i) = (r * z).transpose();
  }
  return out;
}

Eigen::MatrixXd dirichlet_oracle(const Eigen::VectorXd& a, long n,
                                 RngStream& rng) {
  const int d = static_cast<int>(a.size());
  if ((a.array() <= 0.0).any())
    throw InvalidParams("dirichlet_oracle: parameters must be positive");
  Eigen::MatrixXd out(n, d);
  for (long i = 0; i < n; ++i) {
    double total = 0.0;
    for (int k = 0; k < d; ++k) {
      out(i, k) = sample(Dist::gamma(a[k], 1.0), rng);
      total += out(i, k);
    }
    out.row(i) /= total;
  }
  return out;
}

TestOutcome ks_test(std::vector<double> samples,
                    const std::function<double(double)>& cdf, double level) {
  const long n = static_cast<long>(samples.size());
  if (n < 100) throw TooFewSamples("ks_test: need at least 100 samples");
  std::sort(samples.begin(), samples.end());
  double d_stat = 0.0;
  for (long i = 0; i < n; ++i) {
    const double f = cdf(samples[i]);
    d_stat = std::max(d_stat, (i + 1.0) / n - f);
    d_stat = std::max(d_stat, f - static_cast<double>(i) / n);
  }
  TestOutcome out;
  out.statistic = d_stat;
  out.level = level;
  out.critical_value = ks_asymptotic_critical(level, static_cast<double>(n));
  out.reject = out.statistic > out.critical_value;
  out.n_a = n;
  return out;
}

TestOutcome ks_two_sample(std::vector<double> a, std::vector<double> b,
                          double level) {
  const long n = static_cast<long>(a.size());
  const long m = static_cast<long>(b.size());
  if (n < 100 || m < 100)
    throw TooFewSamples("ks_two_sample: need at least 100 samples per side");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d_stat = 0.0;
  long i = 0, j = 0;
  while (i < n && j < m) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d_stat = std::max(
        d_stat, std::abs(static_cast<double>(i) / n -
                         static_cast<double>(j) / m));
  }
  TestOutcome out;
  out.statistic = d_stat;
  out.level = level;
  out.critical_value = ks_asymptotic_critical(
      level, static_cast<double>(n) * m / static_cast<double>(n + m));
  out.reject = out.statistic > out.critical_value;
  out.n_a = n;
  out.n_b = m;
  return out;
}

namespace {

// Sum of pairwise Euclidean distances within the index range [begin, end)
// of the pooled row-major buffer. The fixed-dimension instantiations let
// the compiler unroll the coordinate loop.
template <int Dim>
double within_sum_fixed(const double* pool, const std::vector<int>& idx,
                        long begin, long end) {
  double total = 0.0;
  for (long i = begin; i < end; ++i) {
    const double* ri = pool + static_cast<long>(idx[i]) * Dim;
    for (long j = i + 1; j < end; ++j) {
      const double* rj = pool + static_cast<long>(idx[j]) * Dim;
      double s = 0.0;
      for (int k = 0; k < Dim; ++k) {
        const double diff = ri[k] - rj[k];
        s += diff * diff;
      }
      total += std::sqrt(s);
    }
  }
  return total;
}

double within_sum(const double* pool, int dim, const std::vector<int>& idx,
                  long begin, long end) {
  switch (dim) {
    case 1:
      return within_sum_fixed<1>(pool, idx, begin, end);
    case 2:
      return within_sum_fixed<2>(pool, idx, begin, end);
    case 3:
      return within_sum_fixed<3>(pool, idx, begin, end);
    case 4:
      return within_sum_fixed<4>(pool, idx, begin, end);
    case 5:
      return within_sum_fixed<5>(pool, idx, begin, end);
    default:
      break;
  }
  double total = 0.0;
  for (long i = begin; i < end; ++i) {
    const double* ri = pool + static_cast<long>(idx[i]) * dim;
    for (long j = i + 1; j < end; ++j) {
      const double* rj = pool + static_cast<long>(idx[j]) * dim;
      double s = 0.0;
      for (int k = 0; k < dim; ++k) {
        const double diff = ri[k] - rj[k];
        s += diff * diff;
      }
      total += std::sqrt(s);
    }
  }
  return total;
}

double energy_statistic(double s_aa, double s_bb, double s_ab, long n,
                        long m) {
  const double mu_ab = s_ab / (static_cast<double>(n) * m);
  const double mu_aa = 2.0 * s_aa / (static_cast<double>(n) * n);
  const double mu_bb = 2.0 * s_bb / (static_cast<double>(m) * m);
  const double e = 2.0 * mu_ab - mu_aa - mu_bb;
  return static_cast<double>(n) * m / static_cast<double>(n + m) * e;
}

}  // namespace

TestOutcome energy_test(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                        double level, int n_permutations, RngStream rng) {
  const long n = a.rows();
  const long m = b.rows();
  if (n < 100 || m < 100)
    throw TooFewSamples("energy_test: need at least 100 rows per side");
  if (n_permutations < 200)
    throw TooFewSamples("energy_test: need at least 200 permutations");
  if (a.cols() != b.cols())
    throw InvalidParams("energy_test: dimension mismatch");
  const int dim = static_cast<int>(a.cols());
  const long total_rows = n + m;

  std::vector<double> pool(static_cast<std::size_t>(total_rows) * dim);
  for (long i = 0; i < n; ++i)
    for (int k = 0; k < dim; ++k) pool[i * dim + k] = a(i, k);
  for (long i = 0; i < m; ++i)
    for (int k = 0; k < dim; ++k) pool[(n + i) * dim + k] = b(i, k);

  std::vector<int> identity(total_rows);
  std::iota(identity.begin(), identity.end(), 0);

  // The pooled pair sum is permutation invariant, so each permutation only
  // needs the two within-group sums.
  const double s_aa0 = within_sum(pool.data(), dim, identity, 0, n);
  const double s_bb0 = within_sum(pool.data(), dim, identity, n, total_rows);
  const double s_all = within_sum(pool.data(), dim, identity, 0, total_rows);
  const double observed =
      energy_statistic(s_aa0, s_bb0, s_all - s_aa0 - s_bb0, n, m);

  const RngStream base = rng.split();
  std::vector<double> null_stats(n_permutations);
  parallel_for(n_permutations, [&](long r) {
    RngStream g = base.derive(static_cast<std::uint64_t>(r));
    std::vector<int> idx = identity;
    for (long i = total_rows - 1; i > 0; --i) {
      const long j = static_cast<long>(g.next_u64() % (i + 1));
      std::swap(idx[i], idx[j]);
    }
    const double s_aa = within_sum(pool.data(), dim, idx, 0, n);
    const double s_bb = within_sum(pool.data(), dim, idx, n, total_rows);
    null_stats[r] = energy_statistic(s_aa, s_bb, s_all - s_aa - s_bb, n, m);
  });

  std::vector<double> sorted = null_stats;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  const int k = std::max(
      1, static_cast<int>(std::floor(level * (n_permutations + 1))));

  TestOutcome out;
  out.statistic = observed;
  out.level = level;
  out.critical_value = sorted[k - 1];
  out.reject = out.statistic > out.critical_value;
  out.n_a = n;
  out.n_b = m;
  return out;
}

}  // namespace depmod
