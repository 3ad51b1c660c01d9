#include "depmod/distribution.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "depmod/errors.hpp"
#include "depmod/special.hpp"

namespace depmod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const char* what) {
  if (!ok) throw InvalidParams(what);
}

// Marsaglia-Tsang rejection sampler for Gamma(shape, rate 1), with the
// power-of-uniform boost for shape < 1.
double gamma_draw(double shape, RngStream& rng) {
  if (shape < 1.0) {
    const double u = rng.next_unit();
    return gamma_draw(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x, v;
    do {
      x = special::normal_quantile(rng.next_unit());
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_unit();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double beta_draw(double a, double b, RngStream& rng) {
  const double g1 = gamma_draw(a, rng);
  const double g2 = gamma_draw(b, rng);
  return g1 / (g1 + g2);
}

double beta_quantile(double a, double b, double u) {
  return special::invert_cdf(
      [a, b](double x) { return special::inc_beta(a, b, x); }, u, 0.0, 1.0);
}

double gamma_quantile(double shape, double rate, double u) {
  // Expand the upper bracket geometrically from a moment-based guess.
  double hi = (shape + 10.0 * std::sqrt(shape) + 10.0) / rate;
  while (special::inc_gamma_p(shape, rate * hi) < u) hi *= 2.0;
  return special::invert_cdf(
      [shape, rate](double x) { return special::inc_gamma_p(shape, rate * x); },
      u, 0.0, hi);
}

double student_t_cdf(double nu, double x) {
  if (x == 0.0) return 0.5;
  const double w = nu / (nu + x * x);
  const double half = 0.5 * special::inc_beta(0.5 * nu, 0.5, w);
  return x > 0.0 ? 1.0 - half : half;
}

double student_t_quantile(double nu, double u) {
  if (u == 0.5) return 0.0;
  if (nu == 1.0) return std::tan(kPi * (u - 0.5));
  if (nu == 2.0) {
    const double al = 2.0 * u - 1.0;
    return al * std::sqrt(2.0 / (1.0 - al * al));
  }
  double hi = 1.0;
  while (student_t_cdf(nu, hi) < u) hi *= 2.0;
  double lo = -1.0;
  while (student_t_cdf(nu, lo) > u) lo *= 2.0;
  return special::invert_cdf([nu](double x) { return student_t_cdf(nu, x); },
                             u, lo, hi);
}

}  // namespace

Dist Dist::normal(double mu, double var) {
  require(var > 0.0, "normal: variance must be positive");
  return {Family::normal, mu, var};
}

Dist Dist::student_t(double nu) {
  require(nu > 0.0, "student_t: nu must be positive");
  return {Family::student_t, nu};
}

Dist Dist::cauchy() { return {Family::cauchy}; }

Dist Dist::beta(double a, double b) {
  require(a > 0.0 && b > 0.0, "beta: shape parameters must be positive");
  return {Family::beta, a, b};
}

Dist Dist::b1(double c, double a, double b) {
  require(c > 0.0, "b1: scale c must be positive");
  require(a > 0.0 && b > 0.0, "b1: shape parameters must be positive");
  return {Family::b1, c, a, b};
}

Dist Dist::gb1(double p, double r, double a, double b) {
  require(p > 0.0, "gb1: power p must be positive");
  require(r > 0.0, "gb1: scale r must be positive");
  require(a > 0.0 && b > 0.0, "gb1: shape parameters must be positive");
  return {Family::gb1, p, r, a, b};
}

Dist Dist::gamma(double shape, double rate) {
  require(shape > 0.0, "gamma: shape must be positive");
  require(rate > 0.0, "gamma: rate must be positive");
  return {Family::gamma, shape, rate};
}

Dist Dist::inverse_gamma(double shape, double scale) {
  require(shape > 0.0, "inverse_gamma: shape must be positive");
  require(scale > 0.0, "inverse_gamma: scale must be positive");
  return {Family::inverse_gamma, shape, scale};
}

Dist Dist::uniform(double lo, double hi) {
  require(lo < hi, "uniform: lo must be below hi");
  return {Family::uniform, lo, hi};
}

Dist Dist::rademacher() { return {Family::rademacher}; }

Dist Dist::trapezoidal(double beta) {
  require(beta > 0.0 && beta <= 1.0, "trapezoidal: beta must lie in (0,1]");
  return {Family::trapezoidal, beta};
}

Dist Dist::trunc_b1(double beta) {
  require(beta > 0.0 && beta <= 1.0, "trunc_b1: beta must lie in (0,1]");
  return {Family::trunc_b1, beta};
}

double sample(const Dist& d, RngStream& rng) {
  switch (d.family) {
    case Family::normal:
      return d.p0 +
             std::sqrt(d.p1) * special::normal_quantile(rng.next_unit());
    case Family::student_t: {
      const double z = special::normal_quantile(rng.next_unit());
      const double chi2 = 2.0 * gamma_draw(0.5 * d.p0, rng);
      return z / std::sqrt(chi2 / d.p0);
    }
    case Family::cauchy:
      return std::tan(kPi * (rng.next_unit() - 0.5));
    case Family::beta:
      return beta_draw(d.p0, d.p1, rng);
    case Family::b1:
      return d.p0 * beta_draw(d.p1, d.p2, rng);
    case Family::gb1:
      return d.p1 * std::pow(beta_draw(d.p2, d.p3, rng), 1.0 / d.p0);
    case Family::gamma:
      return gamma_draw(d.p0, rng) / d.p1;
    case Family::inverse_gamma:
      return d.p1 / gamma_draw(d.p0, rng);
    case Family::uniform:
      return d.p0 + (d.p1 - d.p0) * rng.next_unit();
    case Family::rademacher:
      return rng.next_unit() < 0.5 ? -1.0 : 1.0;
    case Family::trapezoidal:
    case Family::trunc_b1:
      return quantile(d, rng.next_unit());
  }
  throw UnsupportedFamily("sample: unknown family");
}

double cdf(const Dist& d, double x) {
  switch (d.family) {
    case Family::normal:
      return special::normal_cdf((x - d.p0) / std::sqrt(d.p1));
    case Family::student_t:
      return student_t_cdf(d.p0, x);
    case Family::cauchy:
      return 0.5 + std::atan(x) / kPi;
    case Family::beta:
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return special::inc_beta(d.p0, d.p1, x);
    case Family::b1:
      if (x <= 0.0) return 0.0;
      if (x >= d.p0) return 1.0;
      return special::inc_beta(d.p1, d.p2, x / d.p0);
    case Family::gb1:
      if (x <= 0.0) return 0.0;
      if (x >= d.p1) return 1.0;
      return special::inc_beta(d.p2, d.p3, std::pow(x / d.p1, d.p0));
    case Family::gamma:
      if (x <= 0.0) return 0.0;
      return special::inc_gamma_p(d.p0, d.p1 * x);
    case Family::inverse_gamma:
      if (x <= 0.0) return 0.0;
      return special::inc_gamma_q(d.p0, d.p1 / x);
    case Family::uniform:
      if (x <= d.p0) return 0.0;
      if (x >= d.p1) return 1.0;
      return (x - d.p0) / (d.p1 - d.p0);
    case Family::rademacher:
      if (x < -1.0) return 0.0;
      if (x < 1.0) return 0.5;
      return 1.0;
    case Family::trapezoidal: {
      const double b = d.p0;
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      if (x <= 1.0 - b) return 2.0 * x / (2.0 - b);
      const double r = 1.0 - x;
      return 1.0 - r * r / (b * (2.0 - b));
    }
    case Family::trunc_b1: {
      const double b = d.p0;
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return x * (2.0 - b * x) / (2.0 - b);
    }
  }
  throw UnsupportedFamily("cdf: unknown family");
}

double quantile(const Dist& d, double u) {
  if (!(u > 0.0 && u < 1.0))
    throw DomainError("quantile: u must lie in (0,1)");
  switch (d.family) {
    case Family::normal:
      return d.p0 + std::sqrt(d.p1) * special::normal_quantile(u);
    case Family::student_t:
      return student_t_quantile(d.p0, u);
    case Family::cauchy:
      return std::tan(kPi * (u - 0.5));
    case Family::beta:
      return beta_quantile(d.p0, d.p1, u);
    case Family::b1:
      return d.p0 * beta_quantile(d.p1, d.p2, u);
    case Family::gb1:
      return d.p1 * std::pow(beta_quantile(d.p2, d.p3, u), 1.0 / d.p0);
    case Family::gamma:
      return gamma_quantile(d.p0, d.p1, u);
    case Family::inverse_gamma:
      // 1/G with G ~ Gamma(shape, rate = scale)
      return 1.0 / gamma_quantile(d.p0, d.p1, 1.0 - u);
    case Family::uniform:
      return d.p0 + (d.p1 - d.p0) * u;
    case Family::rademacher:
      return u <= 0.5 ? -1.0 : 1.0;
    case Family::trapezoidal: {
      const double b = d.p0;
      const double knee = 2.0 * (1.0 - b) / (2.0 - b);
      if (u <= knee) return u * (2.0 - b) / 2.0;
      return 1.0 - std::sqrt((1.0 - u) * b * (2.0 - b));
    }
    case Family::trunc_b1: {
      const double b = d.p0;
      const double z = b * (2.0 - b) * u;
      // root of b*x^2 - 2x + (2-b)u = 0, written to avoid cancellation
      return (2.0 - b) * u / (1.0 + std::sqrt(1.0 - z));
    }
  }
  throw UnsupportedFamily("quantile: unknown family");
}

std::pair<double, double> support(const Dist& d) {
  switch (d.family) {
    case Family::normal:
    case Family::student_t:
    case Family::cauchy:
      return {-kInf, kInf};
    case Family::beta:
    case Family::trapezoidal:
    case Family::trunc_b1:
      return {0.0, 1.0};
    case Family::b1:
      return {0.0, d.p0};
    case Family::gb1:
      return {0.0, d.p1};
    case Family::gamma:
    case Family::inverse_gamma:
      return {0.0, kInf};
    case Family::uniform:
      return {d.p0, d.p1};
    case Family::rademacher:
      return {-1.0, 1.0};
  }
  throw UnsupportedFamily("support: unknown family");
}

bool is_continuous(const Dist& d) { return d.family != Family::rademacher; }

bool finite_variance(const Dist& d) {
  switch (d.family) {
    case Family::student_t:
      return d.p0 > 2.0;
    case Family::cauchy:
      return false;
    case Family::inverse_gamma:
      return d.p0 > 2.0;
    default:
      return true;
  }
}

std::string to_string(const Dist& d) {
  std::ostringstream os;
  switch (d.family) {
    case Family::normal:
      os << "normal(" << d.p0 << ", " << d.p1 << ")";
      break;
    case Family::student_t:
      os << "student_t(" << d.p0 << ")";
      break;
    case Family::cauchy:
      os << "cauchy";
      break;
    case Family::beta:
      os << "beta(" << d.p0 << ", " << d.p1 << ")";
      break;
    case Family::b1:
      os << "b1(" << d.p0 << ", " << d.p1 << ", " << d.p2 << ")";
      break;
    case Family::gb1:
      os << "gb1(" << d.p0 << ", " << d.p1 << ", " << d.p2 << ", " << d.p3
         << ")";
      break;
    case Family::gamma:
      os << "gamma(" << d.p0 << ", " << d.p1 << ")";
      break;
    case Family::inverse_gamma:
      os << "inverse_gamma(" << d.p0 << ", " << d.p1 << ")";
      break;
    case Family::uniform:
      os << "uniform(" << d.p0 << ", " << d.p1 << ")";
      break;
    case Family::rademacher:
      os << "rademacher";
      break;
    case Family::trapezoidal:
      os << "trapezoidal(" << d.p0 << ")";
      break;
    case Family::trunc_b1:
      os << "trunc_b1(" << d.p0 << ")";
      break;
  }
  return os.str();
}

}  // namespace depmod
