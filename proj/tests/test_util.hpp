#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "depmod/dm.hpp"
#include "depmod/rng.hpp"

namespace test_util {

// Adaptive Simpson quadrature, independent of the library's quadrature.
inline double simpson_rec(const std::function<double(double)>& f, double a,
                          double b, double fa, double fm, double fb,
                          double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

inline double quad(const std::function<double(double)>& f, double a, double b,
                   double tol = 1e-12) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 50);
}

// Random symmetric positive definite matrix with unit-ish scale.
inline Eigen::MatrixXd random_spd(int d, depmod::RngStream& rng,
                                  double diag_boost = 0.5) {
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      a(i, j) = 2.0 * rng.next_unit() - 1.0;
  Eigen::MatrixXd s = a * a.transpose() / d;
  s += diag_boost * Eigen::MatrixXd::Identity(d, d);
  return s;
}

inline Eigen::VectorXd column_mean(const Eigen::MatrixXd& m) {
  return m.colwise().mean();
}

inline Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& m) {
  const Eigen::MatrixXd centered = m.rowwise() - m.colwise().mean();
  return centered.transpose() * centered / (m.rows() - 1.0);
}

inline std::vector<double> column(const Eigen::MatrixXd& m, int k) {
  std::vector<double> out(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) out[i] = m(i, k);
  return out;
}

inline std::vector<double> draw(const depmod::Dist& d, long n,
                                depmod::RngStream& rng) {
  std::vector<double> out(n);
  for (long i = 0; i < n; ++i) out[i] = depmod::sample(d, rng);
  return out;
}

// Empirical quantile of a sorted copy.
inline double empirical_quantile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double idx = p * (v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(idx);
  const double frac = idx - lo;
  if (lo + 1 >= v.size()) return v.back();
  return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

}  // namespace test_util
