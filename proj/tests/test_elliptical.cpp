#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "depmod/elliptical.hpp"
#include "depmod/oracles.hpp"
#include "depmod/special.hpp"
#include "test_util.hpp"

using namespace depmod;

namespace {

CovarianceMatrix s2_cov() {
  Eigen::VectorXd sd(3);
  sd << 3, 5, 4;
  Eigen::MatrixXd corr(3, 3);
  corr << 1, 0.25, 0.5, 0.25, 1, 0.75, 0.5, 0.75, 1;
  return CovarianceMatrix::from(covariance_from_correlations(sd, corr));
}

Eigen::MatrixXd order_rows(const SampleBatch& batch,
                           const DependencyModel& m) {
  // rows rearranged to (pivot, perm...) order
  Eigen::MatrixXd out(batch.values.rows(), batch.values.cols());
  out.col(0) = batch.values.col(m.pivot());
  for (int k = 0; k + 1 < m.dim(); ++k)
    out.col(k + 1) = batch.values.col(m.perm()[k]);
  return out;
}

}  // namespace

TEST_CASE("gaussian: identity covariance passes latents through") {
  const CovarianceMatrix id =
      CovarianceMatrix::from(Eigen::MatrixXd::Identity(3, 3));
  const DependencyModel m =
      gaussian_dm(Eigen::VectorXd::Zero(3), id, 0, {1, 2});
  RngStream g(1);
  for (int rep = 0; rep < 10; ++rep) {
    const double x = m.sample_pivot(g);
    const Eigen::VectorXd z = m.sample_latents(g);
    const Eigen::VectorXd y = m.map(x, z);
    CHECK((y - z).lpNorm<Eigen::Infinity>() < 1e-14);
  }
}

TEST_CASE("gaussian: empirical covariance and correlations match") {
  const CovarianceMatrix cov = s2_cov();
  const DependencyModel m =
      gaussian_dm(Eigen::VectorXd::Zero(3), cov, 0, {1, 2});
  RngStream g(22);
  const SampleBatch batch = sample_batch(m, 1000000, g);
  const Eigen::MatrixXd c = test_util::sample_covariance(batch.values);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(c(i, j) - cov.sigma(i, j)) < 0.02 * 25.0);
  const double r12 = c(0, 1) / std::sqrt(c(0, 0) * c(1, 1));
  const double r13 = c(0, 2) / std::sqrt(c(0, 0) * c(2, 2));
  const double r23 = c(1, 2) / std::sqrt(c(1, 1) * c(2, 2));
  CHECK(r12 == doctest::Approx(0.25).epsilon(0.04));
  CHECK(r13 == doctest::Approx(0.50).epsilon(0.02));
  CHECK(r23 == doctest::Approx(0.75).epsilon(0.02));
}

TEST_CASE("gaussian: pivot marginal law") {
  const CovarianceMatrix cov = s2_cov();
  Eigen::VectorXd mu(3);
  mu << 1.0, -2.0, 0.5;
  const DependencyModel m = gaussian_dm(mu, cov, 1, {0, 2});
  RngStream g(23);
  std::vector<double> xs(100000);
  for (auto& v : xs) v = m.sample_pivot(g);
  const Dist law = Dist::normal(-2.0, 25.0);
  CHECK_FALSE(
      ks_test(xs, [&](double x) { return cdf(law, x); }, 0.01).reject);
}

TEST_CASE("gaussian: regression coefficient of the pivot in the first output") {
  const CovarianceMatrix cov = s2_cov();
  const DependencyModel m =
      gaussian_dm(Eigen::VectorXd::Zero(3), cov, 0, {1, 2});
  Eigen::VectorXd z(2);
  z << 0.0, 0.0;
  const double c0 = m.map(0.0, z)[0];
  const double c1 = m.map(1.0, z)[0];
  CHECK(c1 - c0 == doctest::Approx(0.25 * 5.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("gaussian: central latents trace the conditional mean") {
  const CovarianceMatrix cov = s2_cov();
  Eigen::VectorXd mu(3);
  mu << 0.3, -1.0, 2.0;
  const DependencyModel m = gaussian_dm(mu, cov, 0, {1, 2});
  Eigen::VectorXd z(2);
  z << mu[1], mu[2];  // central values of the latent laws
  for (double x : {-2.0, 0.0, 1.5}) {
    const Eigen::VectorXd y = m.map(x, z);
    // conditional multivariate normal mean given the pivot
    for (int k = 0; k < 2; ++k) {
      const int w = k + 1;
      const double expected =
          mu[w] + cov.sigma(w, 0) / cov.sigma(0, 0) * (x - mu[0]);
      CHECK(y[k] == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("gaussian: map is affine (second differences vanish)") {
  const CovarianceMatrix cov = s2_cov();
  const DependencyModel m =
      gaussian_dm(Eigen::VectorXd::Zero(3), cov, 0, {1, 2});
  RngStream g(5);
  const double h = 1e-3;
  for (int rep = 0; rep < 5; ++rep) {
    const double x = m.sample_pivot(g);
    const Eigen::VectorXd z = m.sample_latents(g);
    for (int k = 0; k < 2; ++k) {
      const double f0 = m.map(x - h, z)[k];
      const double f1 = m.map(x, z)[k];
      const double f2 = m.map(x + h, z)[k];
      CHECK(std::abs(f2 - 2 * f1 + f0) / (h * h) < 1e-8);
    }
    for (int j = 0; j < 2; ++j) {
      Eigen::VectorXd zl = z, zr = z;
      zl[j] -= h;
      zr[j] += h;
      for (int k = 0; k < 2; ++k) {
        const double f0 = m.map(x, zl)[k];
        const double f1 = m.map(x, z)[k];
        const double f2 = m.map(x, zr)[k];
        CHECK(std::abs(f2 - 2 * f1 + f0) / (h * h) < 1e-8);
      }
    }
  }
}

TEST_CASE("student t: first chain step at identity scale") {
  const CovarianceMatrix id =
      CovarianceMatrix::from(Eigen::MatrixXd::Identity(2, 2));
  const double nu = 4.0;
  const DependencyModel m =
      student_t_dm(nu, Eigen::VectorXd::Zero(2), id, 0, {1});
  Eigen::VectorXd z(1);
  for (double x : {-1.3, 0.0, 2.4}) {
    for (double zz : {-0.7, 0.2, 1.9}) {
      z[0] = zz;
      const double expected = std::sqrt((nu + x * x) / (nu + 1.0)) * zz;
      CHECK(m.map(x, z)[0] == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("student t: conditional scale identity along sampled paths") {
  const CovarianceMatrix cov = s2_cov();
  Eigen::VectorXd mu(3);
  mu << 1.0, 2.0, 3.0;
  const double nu = 5.0;
  const DependencyModel m = student_t_dm(nu, mu, cov, 0, {1, 2});

  // reconstruct the standardized chain through the pivot-first factor
  std::vector<int> order = {0, 1, 2};
  const Eigen::MatrixXd l = cholesky(permute_sym(cov.sigma, order));
  RngStream g(17);
  for (int rep = 0; rep < 50; ++rep) {
    const double x = m.sample_pivot(g);
    const Eigen::VectorXd z = m.sample_latents(g);
    const Eigen::VectorXd y = m.map(x, z);
    Eigen::VectorXd vec(3);
    vec << x - mu[0], y[0] - mu[1], y[1] - mu[2];
    const Eigen::VectorXd inner =
        l.triangularView<Eigen::Lower>().solve(vec);
    double sumsq = inner[0] * inner[0];
    for (int i = 1; i < 3; ++i) {
      const double reconstructed = std::sqrt((nu + sumsq) / (nu + i));
      sumsq += inner[i] * inner[i];
      if (std::abs(z[i - 1]) < 1e-3) continue;  // ratio would amplify noise
      const double implemented = inner[i] / z[i - 1];
      CHECK(implemented ==
            doctest::Approx(reconstructed).epsilon(1e-9));
    }
  }
}

TEST_CASE("student t: two-sample agreement with the scale-mixture oracle") {
  const CovarianceMatrix cov = s2_cov();
  Eigen::VectorXd mu(3);
  mu << 0.5, -0.5, 1.0;
  const DependencyModel m = student_t_dm(5.0, mu, cov, 2, {0, 1});
  RngStream g(404);
  const SampleBatch a = sample_batch(m, 4000, g);
  const Eigen::MatrixXd b = mixture_t_sample(5.0, mu, cov, 4000, g);
  CHECK_FALSE(energy_test(a.values, b, 0.01, 200, g.split()).reject);
}

TEST_CASE("student t: large nu approaches the gaussian model") {
  const CovarianceMatrix cov = s2_cov();
  const Eigen::VectorXd mu = Eigen::VectorXd::Zero(3);
  const DependencyModel t = student_t_dm(1e6, mu, cov, 0, {1, 2});
  const DependencyModel n = gaussian_dm(mu, cov, 0, {1, 2});
  RngStream g(405);
  const SampleBatch a = sample_batch(t, 3000, g);
  const SampleBatch b = sample_batch(n, 3000, g);
  CHECK_FALSE(energy_test(a.values, b.values, 0.01, 200, g.split()).reject);
}

TEST_CASE("cauchy: first step of the standard recursion") {
  const CovarianceMatrix id =
      CovarianceMatrix::from(Eigen::MatrixXd::Identity(2, 2));
  const DependencyModel m =
      cauchy_dm(Eigen::VectorXd::Zero(2), id, 0, {1});
  Eigen::VectorXd z(1);
  for (double x : {-5.0, -0.2, 3.3}) {
    for (double zz : {-1.5, 0.4}) {
      z[0] = zz;
      const double expected = std::sqrt((1.0 + x * x) / 2.0) * zz;
      CHECK(m.map(x, z)[0] == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("cauchy: coordinatewise agreement with the normal-ratio oracle") {
  const CovarianceMatrix id =
      CovarianceMatrix::from(Eigen::MatrixXd::Identity(3, 3));
  const DependencyModel m =
      cauchy_dm(Eigen::VectorXd::Zero(3), id, 0, {1, 2});
  RngStream g(406);
  const long n = 20000;
  const SampleBatch a = sample_batch(m, n, g);
  // oracle: standard normal vector over the square root of an independent
  // chi-square with one degree of freedom
  Eigen::MatrixXd b(n, 3);
  for (long i = 0; i < n; ++i) {
    const double w = special::normal_quantile(g.next_unit());
    for (int k = 0; k < 3; ++k)
      b(i, k) = special::normal_quantile(g.next_unit()) / std::abs(w);
  }
  for (int k = 0; k < 3; ++k) {
    CHECK_FALSE(ks_two_sample(test_util::column(a.values, k),
                              test_util::column(b, k), 0.01)
                    .reject);
  }
}

TEST_CASE("cauchy: scalar model has the standard quartile") {
  Eigen::MatrixXd one(1, 1);
  one << 1.0;
  const DependencyModel m =
      cauchy_dm(Eigen::VectorXd::Zero(1), CovarianceMatrix::from(one), 0, {});
  CHECK(m.pivot_law().quantile(0.75) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lift then sample agrees with sample then transform") {
  RngStream g(500);
  Eigen::MatrixXd t(3, 3);
  t << 1.5, 0, 0, 0.3, 1.1, 0, -0.4, 0.2, 0.9;
  Eigen::VectorXd mu(3);
  mu << 1.0, -1.0, 0.5;
  const CovarianceMatrix id =
      CovarianceMatrix::from(Eigen::MatrixXd::Identity(3, 3));
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);

  std::vector<DependencyModel> bases;
  bases.push_back(gaussian_dm(zero, id, 0, {1, 2}));
  bases.push_back(student_t_dm(6.0, zero, id, 0, {1, 2}));
  bases.push_back(cauchy_dm(zero, id, 0, {1, 2}));
  for (const auto& base : bases) {
    INFO("family ", base.family());
    const DependencyModel lifted = linear_lift(base, t, mu);
    const SampleBatch direct = sample_batch(lifted, 2500, g);
    const SampleBatch raw = sample_batch(base, 2500, g);
    Eigen::MatrixXd transformed =
        (order_rows(raw, base) * t.transpose()).rowwise() + mu.transpose();
    // direct rows back in (pivot, perm) order for comparability
    const Eigen::MatrixXd direct_ordered = order_rows(direct, lifted);
    CHECK_FALSE(
        energy_test(direct_ordered, transformed, 0.01, 200, g.split())
            .reject);
  }
}
