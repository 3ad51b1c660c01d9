#pragma once

#include "depmod/dm.hpp"

namespace depmod {

// Uniform law on the unit square restricted to 1 - beta*x1 - x2 >= 0.
// Pivot 0 keeps x1 (truncated first-kind beta marginal) and produces
// x2 = z*(1 - beta*x1); pivot 1 keeps x2 (trapezoidal marginal) and
// produces x1 = z*min((1 - x2)/beta, 1).
DependencyModel trapezoid_dm(double beta, int pivot);

}  // namespace depmod
