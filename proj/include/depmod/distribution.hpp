#pragma once

#include <string>
#include <utility>

#include "depmod/rng.hpp"

namespace depmod {

enum class Family {
  normal,         // Normal(mu, var)
  student_t,      // standard t with nu degrees of freedom
  cauchy,         // standard Cauchy
  beta,           // Beta(a, b) on (0,1)
  b1,             // first-kind beta on (0,c): c * Beta(a, b)
  gb1,            // generalized first-kind beta: r * Beta(a, b)^(1/p)
  gamma,          // Gamma(shape a, rate beta)
  inverse_gamma,  // InverseGamma(shape a, scale beta)
  uniform,        // Uniform(lo, hi)
  rademacher,     // +/-1 with probability 1/2 each
  trapezoidal,    // density 2/(2-beta) on [0,1-beta], linear to 0 at 1
  trunc_b1,       // density 2(1-beta*x)/(2-beta) on [0,1]
};

// Value type describing one univariate law. Use the factory functions;
// they validate parameters and throw InvalidParams.
struct Dist {
  Family family = Family::uniform;
  double p0 = 0, p1 = 1, p2 = 0, p3 = 0;

  static Dist normal(double mu, double var);
  static Dist student_t(double nu);
  static Dist cauchy();
  static Dist beta(double a, double b);
  static Dist b1(double c, double a, double b);
  static Dist gb1(double p, double r, double a, double b);
  static Dist gamma(double shape, double rate);
  static Dist inverse_gamma(double shape, double scale);
  static Dist uniform(double lo, double hi);
  static Dist rademacher();
  static Dist trapezoidal(double beta);
  static Dist trunc_b1(double beta);
};

double sample(const Dist& d, RngStream& rng);
double cdf(const Dist& d, double x);
double quantile(const Dist& d, double u);

// Open support interval (closed at infinities); rademacher reports [-1, 1].
std::pair<double, double> support(const Dist& d);

bool is_continuous(const Dist& d);
bool finite_variance(const Dist& d);

std::string to_string(const Dist& d);

}  // namespace depmod
