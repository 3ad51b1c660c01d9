#include "depmod/trapezoid.hpp"

#include <algorithm>

#include "depmod/errors.hpp"

namespace depmod {

DependencyModel trapezoid_dm(double beta, int pivot) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw InvalidParams("trapezoid_dm: beta must lie in (0,1]");
  if (pivot != 0 && pivot != 1)
    throw InvalidParams("trapezoid_dm: pivot must be 0 or 1");

  PivotLaw law;
  std::vector<Dist> latents{Dist::uniform(0.0, 1.0)};
  MapFn fn;
  if (pivot == 0) {
    law.base = Dist::trunc_b1(beta);
    fn = [beta](double x, const Eigen::VectorXd& z) {
      Eigen::VectorXd out(1);
      out[0] = z[0] * (1.0 - beta * x);
      return out;
    };
  } else {
    law.base = Dist::trapezoidal(beta);
    fn = [beta](double x, const Eigen::VectorXd& z) {
      Eigen::VectorXd out(1);
      out[0] = z[0] * std::min((1.0 - x) / beta, 1.0);
      return out;
    };
  }
  return DependencyModel("trapezoid", 2, pivot, {1 - pivot}, law,
                         std::move(latents), std::move(fn));
}

}  // namespace depmod
