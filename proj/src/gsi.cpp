#include "depmod/gsi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "depmod/errors.hpp"
#include "depmod/parallel.hpp"

namespace depmod {

namespace {

struct Accum {
  long rows = 0;
  Eigen::VectorXd sum_a, sum_b, sum_c;
  Eigen::MatrixXd m_aa, m_bb, m_ac, m_d;

  explicit Accum(int q)
      : sum_a(Eigen::VectorXd::Zero(q)),
        sum_b(Eigen::VectorXd::Zero(q)),
        sum_c(Eigen::VectorXd::Zero(q)),
        m_aa(Eigen::MatrixXd::Zero(q, q)),
        m_bb(Eigen::MatrixXd::Zero(q, q)),
        m_ac(Eigen::MatrixXd::Zero(q, q)),
        m_d(Eigen::MatrixXd::Zero(q, q)) {}

  Accum& operator+=(const Accum& o) {
    rows += o.rows;
    sum_a += o.sum_a;
    sum_b += o.sum_b;
    sum_c += o.sum_c;
    m_aa += o.m_aa;
    m_bb += o.m_bb;
    m_ac += o.m_ac;
    m_d += o.m_d;
    return *this;
  }
};

struct Indices {
  double fo_trace, tot_trace, fo_frob, tot_frob;
};

Indices indices_from(const Accum& acc, bool* degenerate = nullptr) {
  const double n = static_cast<double>(acc.rows);
  const Eigen::VectorXd mean = (acc.sum_a + acc.sum_b) / (2.0 * n);
  const Eigen::MatrixXd sigma =
      (acc.m_aa + acc.m_bb) / (2.0 * n) - mean * mean.transpose();
  const Eigen::VectorXd mean_ac = (acc.sum_a + acc.sum_c) / (2.0 * n);
  Eigen::MatrixXd d_fo = acc.m_ac / n - mean_ac * mean_ac.transpose();
  d_fo = 0.5 * (d_fo + d_fo.transpose()).eval();
  const Eigen::MatrixXd d_tot = acc.m_d / (2.0 * n);

  const double tr_sigma = sigma.trace();
  if (degenerate != nullptr) *degenerate = !(tr_sigma > 1e-14);
  const double fr_sigma = sigma.norm();
  Indices out;
  out.fo_trace = d_fo.trace() / tr_sigma;
  out.tot_trace = d_tot.trace() / tr_sigma;
  out.fo_frob = d_fo.norm() / fr_sigma;
  out.tot_frob = d_tot.norm() / fr_sigma;
  return out;
}

double stderr_of(const std::vector<double>& reps) {
  const int r = static_cast<int>(reps.size());
  if (r < 2) return 0.0;
  const double mean = std::accumulate(reps.begin(), reps.end(), 0.0) / r;
  double ss = 0.0;
  for (double v : reps) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (r - 1)) / std::sqrt(static_cast<double>(r));
}

// Adaptive Simpson quadrature.
double simpson_step(const std::function<double(double)>& f, double a,
                    double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (a >= b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

GsiReport gsi_pick_freeze(const DependencyModel& m,
                          const std::vector<int>& input_group, long n,
                          RngStream rng) {
  const int p = 1 + m.n_latents();
  const int q = m.dim() - 1;
  if (n < 64) throw InvalidParams("gsi_pick_freeze: n too small");
  if (input_group.empty())
    throw InvalidParams("gsi_pick_freeze: empty input group");
  std::vector<bool> in_group(p, false);
  for (int k : input_group) {
    if (k < 0 || k >= p)
      throw InvalidParams("gsi_pick_freeze: input index out of range");
    in_group[k] = true;
  }
  if (!m.finite_variance_inputs())
    throw InfiniteVariance(
        "gsi_pick_freeze: model inputs lack finite variance");

  const int reps = static_cast<int>(std::min<long>(32, n / 32 + 1));
  const long per = n / reps;
  const RngStream base = rng.split();

  std::vector<Accum> acc(reps, Accum(q));
  // rank of each output coordinate: accumulate in natural order
  std::vector<int> slot(q);
  for (int k = 0; k < q; ++k) {
    int rank = 0;
    for (int j = 0; j < q; ++j)
      if (m.perm()[j] < m.perm()[k]) ++rank;
    slot[k] = rank;
  }

  parallel_for(reps, [&](long r) {
    RngStream g = base.derive(static_cast<std::uint64_t>(r));
    Accum& a = acc[r];
    Eigen::VectorXd xa(p), xb(p), xc(p);
    Eigen::VectorXd fa(q), fb(q), fc(q);
    auto eval = [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) {
      const Eigen::VectorXd y = m.map(x[0], x.tail(p - 1));
      for (int k = 0; k < q; ++k) out[slot[k]] = y[k];
    };
    for (long i = 0; i < per; ++i) {
      xa[0] = m.sample_pivot(g);
      for (int k = 0; k < p - 1; ++k) xa[k + 1] = m.sample_latent(k, g);
      xb[0] = m.sample_pivot(g);
      for (int k = 0; k < p - 1; ++k) xb[k + 1] = m.sample_latent(k, g);
      xc = xb;
      for (int k = 0; k < p; ++k)
        if (in_group[k]) xc[k] = xa[k];
      eval(xa, fa);
      eval(xb, fb);
      eval(xc, fc);
      a.rows += 1;
      a.sum_a += fa;
      a.sum_b += fb;
      a.sum_c += fc;
      a.m_aa += fa * fa.transpose();
      a.m_bb += fb * fb.transpose();
      a.m_ac += fa * fc.transpose();
      const Eigen::VectorXd diff = fb - fc;
      a.m_d += diff * diff.transpose();
    }
  });

  Accum pooled(q);
  for (const Accum& a : acc) pooled += a;

  bool degenerate = false;
  const Indices est = indices_from(pooled, &degenerate);
  if (degenerate)
    throw DegenerateOutput("gsi_pick_freeze: output covariance is null");

  std::vector<double> r_fo_tr, r_tot_tr, r_fo_fr, r_tot_fr;
  for (const Accum& a : acc) {
    if (a.rows < 2) continue;
    const Indices ri = indices_from(a);
    r_fo_tr.push_back(ri.fo_trace);
    r_tot_tr.push_back(ri.tot_trace);
    r_fo_fr.push_back(ri.fo_frob);
    r_tot_fr.push_back(ri.tot_frob);
  }

  GsiReport report;
  report.pivot = m.pivot();
  report.method = GsiMethod::pick_freeze;
  report.n = n;
  report.seed = rng.seed();
  report.fo_trace = std::max(0.0, est.fo_trace);
  report.tot_trace = std::max(0.0, est.tot_trace);
  report.fo_frob = std::max(0.0, est.fo_frob);
  report.tot_frob = std::max(0.0, est.tot_frob);
  report.se_fo_trace = stderr_of(r_fo_tr);
  report.se_tot_trace = stderr_of(r_tot_tr);
  report.se_fo_frob = stderr_of(r_fo_fr);
  report.se_tot_frob = stderr_of(r_tot_fr);
  return report;
}

GsiReport gsi_pick_freeze(const DependencyModel& m, long n, RngStream rng) {
  return gsi_pick_freeze(m, std::vector<int>{0}, n, rng);
}

GsiReport gsi_gaussian_analytic(const Eigen::VectorXd& mu,
                                const CovarianceMatrix& sigma, int pivot) {
  const int d = sigma.dim();
  if (d < 2) throw InvalidParams("gsi_gaussian_analytic: need d >= 2");
  if (mu.size() != d)
    throw InvalidParams("gsi_gaussian_analytic: mu size mismatch");
  if (pivot < 0 || pivot >= d)
    throw InvalidParams("gsi_gaussian_analytic: pivot out of range");

  // Regression of the outputs on the pivot: D = v v^T / sigma_jj with v the
  // pivot's covariance column over the outputs, and the output covariance
  // is sigma with the pivot row/column removed (natural order).
  const double sjj = sigma.sigma(pivot, pivot);
  double tr_d = 0.0, tr_s = 0.0, fr_d2 = 0.0, fr_s2 = 0.0;
  for (int i = 0; i < d; ++i) {
    if (i == pivot) continue;
    const double vi = sigma.sigma(i, pivot);
    tr_d += vi * vi / sjj;
    tr_s += sigma.sigma(i, i);
    for (int l = 0; l < d; ++l) {
      if (l == pivot) continue;
      const double vl = sigma.sigma(l, pivot);
      const double dil = vi * vl / sjj;
      fr_d2 += dil * dil;
      fr_s2 += sigma.sigma(i, l) * sigma.sigma(i, l);
    }
  }

  GsiReport report;
  report.pivot = pivot;
  report.method = GsiMethod::analytic;
  report.fo_trace = report.tot_trace = tr_d / tr_s;
  report.fo_frob = report.tot_frob = std::sqrt(fr_d2) / std::sqrt(fr_s2);
  return report;
}

GsiReport gsi_trapezoid_analytic(double beta, TrapezoidModel which) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw InvalidParams("gsi_trapezoid_analytic: beta must lie in (0,1]");

  // Density of the kept coordinate and the deterministic factor multiplying
  // the uniform latent; the output is f(x, z) = z * g(x).
  std::function<double(double)> density, g;
  std::vector<double> knots{0.0, 1.0};
  if (which == TrapezoidModel::r1) {
    density = [beta](double x) { return 2.0 * (1.0 - beta * x) / (2.0 - beta); };
    g = [beta](double x) { return 1.0 - beta * x; };
  } else {
    density = [beta](double y) {
      if (y <= 1.0 - beta) return 2.0 / (2.0 - beta);
      return 2.0 * (1.0 - y) / (beta * (2.0 - beta));
    };
    g = [beta](double y) { return std::min((1.0 - y) / beta, 1.0); };
    if (beta < 1.0) knots = {0.0, 1.0 - beta, 1.0};
  }

  const double tol = 1e-12;
  auto outer = [&](const std::function<double(double)>& f) {
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k)
      total += integrate(f, knots[k], knots[k + 1], tol);
    return total;
  };

  const double eg = outer([&](double x) { return density(x) * g(x); });
  const double eg2 = outer([&](double x) { return density(x) * g(x) * g(x); });
  // z ~ U(0,1): E z = 1/2, E z^2 = 1/3, handled by quadrature as well
  const double ez = integrate([](double z) { return z; }, 0.0, 1.0, tol);
  const double ez2 = integrate([](double z) { return z * z; }, 0.0, 1.0, tol);

  const double ef = eg * ez;
  const double var = eg2 * ez2 - ef * ef;
  if (!(var > 0.0))
    throw DegenerateOutput("gsi_trapezoid_analytic: null output variance");
  // first-order of the kept coordinate: Var_x(E[f|x]) = Var(g) * (E z)^2
  const double v_x =
      outer([&](double x) { return density(x) * (g(x) * ez - ef) * (g(x) * ez - ef); });
  // total of the kept coordinate: Var - Var_z(E[f|z])
  const double v_z =
      integrate([&](double z) { return (z * eg - ef) * (z * eg - ef); }, 0.0,
                1.0, tol);

  GsiReport report;
  report.pivot = which == TrapezoidModel::r1 ? 0 : 1;
  report.method = GsiMethod::analytic;
  report.fo_trace = report.fo_frob = v_x / var;
  report.tot_trace = report.tot_frob = (var - v_z) / var;
  return report;
}

SelectionResult select_efficient_dm(const std::vector<GsiReport>& reports,
                                    double tol) {
  if (reports.empty())
    throw InvalidParams("select_efficient_dm: no reports");
  for (const GsiReport& r : reports) {
    if (r.method != reports.front().method)
      throw MixedMethods("select_efficient_dm: mixed estimation methods");
    if (r.method == GsiMethod::pick_freeze && r.n != reports.front().n)
      throw MixedMethods("select_efficient_dm: mixed sample counts");
  }

  auto tied_max = [tol](const std::vector<const GsiReport*>& in,
                        double GsiReport::*key) {
    double best = -1.0;
    for (const GsiReport* r : in) best = std::max(best, r->*key);
    std::vector<const GsiReport*> out;
    for (const GsiReport* r : in)
      if (best - r->*key <= tol) out.push_back(r);
    return out;
  };
  auto smallest_pivot = [](const std::vector<const GsiReport*>& in) {
    int j = in.front()->pivot;
    for (const GsiReport* r : in) j = std::min(j, r->pivot);
    return j;
  };

  std::vector<const GsiReport*> pool;
  pool.reserve(reports.size());
  for (const GsiReport& r : reports) pool.push_back(&r);

  SelectionResult result;
  result.ranking = reports;

  auto stage1 = tied_max(pool, &GsiReport::tot_frob);
  result.tie = stage1.size() > 1;
  if (stage1.size() == 1) {
    result.j_star = stage1.front()->pivot;
    result.resolution = TieResolution::second_type_total;
    return result;
  }
  auto stage2 = tied_max(stage1, &GsiReport::tot_trace);
  if (stage2.size() == 1) {
    result.j_star = stage2.front()->pivot;
    result.resolution = TieResolution::first_type_total;
    return result;
  }
  auto stage3 = tied_max(stage2, &GsiReport::fo_frob);
  if (stage3.size() == 1) {
    result.j_star = stage3.front()->pivot;
    result.resolution = TieResolution::first_order;
    return result;
  }
  auto stage4 = tied_max(stage3, &GsiReport::fo_trace);
  if (stage4.size() == 1) {
    result.j_star = stage4.front()->pivot;
    result.resolution = TieResolution::first_order;
    return result;
  }
  result.j_star = smallest_pivot(stage4);
  result.resolution = TieResolution::equivalent;
  return result;
}

}  // namespace depmod
