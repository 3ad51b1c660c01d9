#pragma once

#include <functional>

namespace depmod::special {

// Regularized lower incomplete gamma P(a, x) and its complement Q(a, x).
double inc_gamma_p(double a, double x);
double inc_gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double inc_beta(double a, double b, double x);

double normal_cdf(double x);

// Wichura's AS 241 (PPND16), accurate to near machine precision.
double normal_quantile(double p);

// Generalized inverse of a nondecreasing cdf on the bracket [lo, hi]:
// returns the smallest x with cdf(x) >= u, located to |cdf(x) - u| <= 1e-12.
// Throws BracketError when the bracket does not enclose u.
double invert_cdf(const std::function<double(double)>& cdf, double u,
                  double lo, double hi);

}  // namespace depmod::special
