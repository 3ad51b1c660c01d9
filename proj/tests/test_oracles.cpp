#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "depmod/constrained.hpp"
#include "depmod/errors.hpp"
#include "depmod/oracles.hpp"
#include "depmod/special.hpp"
#include "test_util.hpp"

using namespace depmod;

TEST_CASE("rejection: acceptance rate on a weighted-sum region") {
  // uniforms restricted to 1 - beta*x1 - x2 >= 0 keep (2 - beta)/2 of the
  // unit square
  const double beta = 0.5;
  std::vector<Dist> base(2, Dist::uniform(0.0, 1.0));
  ConstraintSpec cs;
  cs.kind = ConstraintKind::sum_lt;
  cs.c = 1.0;
  cs.weights = Eigen::Vector2d(beta, 1.0);
  RngStream g(100);
  long proposals = 0;
  const long n = 50000;
  const Eigen::MatrixXd rows = rejection_sample(base, cs, 0.0, n, g,
                                                &proposals);
  for (long i = 0; i < n; ++i)
    CHECK(beta * rows(i, 0) + rows(i, 1) < 1.0);
  const double rate = static_cast<double>(n) / proposals;
  const double expected = (2.0 - beta) / 2.0;
  const double se = std::sqrt(expected * (1 - expected) / proposals);
  CHECK(std::abs(rate - expected) < 3.0 * se);
}

TEST_CASE("rejection: equality band holds by construction") {
  std::vector<Dist> base = {Dist::gamma(2.0, 1.0), Dist::gamma(1.0, 1.0),
                            Dist::gamma(1.5, 1.0)};
  ConstraintSpec cs;
  cs.kind = ConstraintKind::sum_eq;
  cs.c = 4.0;
  RngStream g(101);
  const Eigen::MatrixXd rows = rejection_sample(base, cs, 0.05, 2000, g);
  for (long i = 0; i < rows.rows(); ++i)
    CHECK(std::abs(rows.row(i).sum() - 4.0) <= 0.05);
}

TEST_CASE("rejection: band-conditioned gaussian sum matches the chain's "
          "pivot mean") {
  Eigen::VectorXd sd(3);
  sd << 3.0, 5.0, 4.0;
  const double c = 6.0;
  std::vector<Dist> base = {Dist::normal(0, 9), Dist::normal(0, 25),
                            Dist::normal(0, 16)};
  ConstraintSpec cs;
  cs.kind = ConstraintKind::sum_eq;
  cs.c = c;
  RngStream g(102);
  const long n = 20000;
  const Eigen::MatrixXd rows = rejection_sample(base, cs, 0.01, n, g);
  double mean = 0.0;
  for (long i = 0; i < n; ++i) mean += rows(i, 0);
  mean /= n;
  const double expected = c * 9.0 / 50.0;
  const double sdev = std::sqrt(9.0 * 41.0 / 50.0);
  CHECK(std::abs(mean - expected) < 3.5 * sdev / std::sqrt(double(n)));
}

TEST_CASE("rejection: hopeless acceptance aborts") {
  std::vector<Dist> base(2, Dist::uniform(0.0, 1.0));
  ConstraintSpec cs;
  cs.kind = ConstraintKind::sum_eq;
  cs.c = 1.0;
  RngStream g(103);
  CHECK_THROWS_AS(rejection_sample(base, cs, 1e-9, 10, g), AcceptanceTooLow);
}

TEST_CASE("mixture oracle: gaussian limit and scalar cauchy quartile") {
  Eigen::MatrixXd s(2, 2);
  s << 2.0, 0.6, 0.6, 1.0;
  const CovarianceMatrix cov = CovarianceMatrix::from(s);
  Eigen::VectorXd mu(2);
  mu << 1.0, -1.0;
  RngStream g(104);
  const Eigen::MatrixXd big_nu = mixture_t_sample(1e7, mu, cov, 3000, g);
  Eigen::MatrixXd normals(3000, 2);
  for (long i = 0; i < 3000; ++i) {
    Eigen::VectorXd z(2);
    z << special::normal_quantile(g.next_unit()),
        special::normal_quantile(g.next_unit());
    normals.row(i) = (cov.chol * z + mu).transpose();
  }
  CHECK_FALSE(energy_test(big_nu, normals, 0.01, 200, g.split()).reject);

  Eigen::MatrixXd one(1, 1);
  one << 1.0;
  const Eigen::MatrixXd c1 = mixture_t_sample(
      1.0, Eigen::VectorXd::Zero(1), CovarianceMatrix::from(one), 40000, g);
  const double q75 = test_util::empirical_quantile(
      test_util::column(c1, 0), 0.75);
  CHECK(std::abs(q75 - 1.0) < 0.05);
}

TEST_CASE("sphere oracle: closure and second moments") {
  RngStream g(105);
  const int d = 4;
  const double c = 2.0;
  const long n = 50000;
  const Eigen::MatrixXd on = sphere_oracle(d, c, QuadMode::on, n, g);
  double mean_sq = 0.0;
  for (long i = 0; i < n; ++i) {
    CHECK(std::abs(on.row(i).squaredNorm() - c) <= 1e-12 * c);
    mean_sq += on(i, 0) * on(i, 0);
  }
  mean_sq /= n;
  // coordinates of a uniform direction have second moment c/d
  CHECK(std::abs(mean_sq - c / d) < 3.0 * c / std::sqrt(double(n)));

  const Eigen::MatrixXd in = sphere_oracle(d, c, QuadMode::in, n, g);
  for (long i = 0; i < 1000; ++i) CHECK(in.row(i).squaredNorm() < c);
}

TEST_CASE("ks test: gross mismatch rejects, correct law does not") {
  RngStream g(106);
  std::vector<double> u = test_util::draw(Dist::uniform(0, 1), 10000, g);
  const Dist n01 = Dist::normal(0, 1);
  CHECK(ks_test(u, [&](double x) { return cdf(n01, x); }, 0.01).reject);

  const Dist b23 = Dist::beta(2, 3);
  std::vector<double> b = test_util::draw(b23, 100000, g);
  CHECK_FALSE(ks_test(b, [&](double x) { return cdf(b23, x); }, 0.01).reject);

  CHECK_THROWS_AS(ks_test(std::vector<double>(10, 0.5),
                          [](double) { return 0.5; }, 0.01),
                  TooFewSamples);
}

TEST_CASE("energy test: identical batches give a null statistic") {
  RngStream g(107);
  Eigen::MatrixXd a(300, 2);
  for (long i = 0; i < a.rows(); ++i)
    for (int k = 0; k < 2; ++k) a(i, k) = g.next_unit();
  const TestOutcome t = energy_test(a, a, 0.01, 200, g.split());
  CHECK(std::abs(t.statistic) < 1e-9);  // exact up to cancellation noise
  CHECK_FALSE(t.reject);
}

TEST_CASE("energy test: separated laws are detected") {
  RngStream g(108);
  Eigen::MatrixXd a(500, 2), b(500, 2);
  for (long i = 0; i < 500; ++i) {
    for (int k = 0; k < 2; ++k) {
      a(i, k) = g.next_unit();
      b(i, k) = g.next_unit() + 0.5;
    }
  }
  CHECK(energy_test(a, b, 0.01, 200, g.split()).reject);
}

TEST_CASE("calibration: null rejection rates stay near nominal") {
  // 200 repetitions at the 5% level; pass bound is 1.5x nominal
  RngStream g(109);
  const double level = 0.05;
  int ks_rejects = 0;
  const Dist law = Dist::gamma(2.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    RngStream gr = g.derive(rep);
    auto xs = test_util::draw(law, 1000, gr);
    if (ks_test(xs, [&](double x) { return cdf(law, x); }, level).reject)
      ++ks_rejects;
  }
  CHECK(ks_rejects <= static_cast<int>(1.5 * level * 200));

  int energy_rejects = 0;
  for (int rep = 0; rep < 200; ++rep) {
    RngStream gr = g.derive(1000 + rep);
    Eigen::MatrixXd a(100, 2), b(100, 2);
    for (long i = 0; i < 100; ++i)
      for (int k = 0; k < 2; ++k) {
        a(i, k) = special::normal_quantile(gr.next_unit());
        b(i, k) = special::normal_quantile(gr.next_unit());
      }
    if (energy_test(a, b, level, 200, gr.split()).reject) ++energy_rejects;
  }
  CHECK(energy_rejects <= static_cast<int>(1.5 * level * 200));
}

TEST_CASE("two-sample ks: null and alternative behaviour") {
  RngStream g(110);
  const Dist law = Dist::normal(0, 1);
  auto a = test_util::draw(law, 20000, g);
  auto b = test_util::draw(law, 20000, g);
  CHECK_FALSE(ks_two_sample(a, b, 0.01).reject);
  auto c = test_util::draw(Dist::normal(0.2, 1.0), 20000, g);
  CHECK(ks_two_sample(a, c, 0.01).reject);
}
