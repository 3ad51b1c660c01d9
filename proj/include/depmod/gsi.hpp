#pragma once

#include <cstdint>
#include <vector>

#include "depmod/dm.hpp"
#include "depmod/linalg.hpp"

namespace depmod {

enum class GsiMethod { analytic, pick_freeze };

// Generalized sensitivity indices of one pivot: trace-normalized (first
// type) and Frobenius-normalized (second type), first-order and total.
struct GsiReport {
  int pivot = 0;
  GsiMethod method = GsiMethod::analytic;
  long n = 0;
  std::uint64_t seed = 0;
  double fo_trace = 0, tot_trace = 0;
  double fo_frob = 0, tot_frob = 0;
  double se_fo_trace = 0, se_tot_trace = 0;
  double se_fo_frob = 0, se_tot_frob = 0;
};

// Pick-freeze Monte Carlo estimator over the model inputs (index 0 is the
// pivot, 1.. are the latents). Uses a paired (A, B) design with the group
// columns frozen for the cross-product first-order estimator and a
// difference-based total estimator, accumulated as outer products of the
// vector output. Standard errors come from replicate batching; replicate r
// uses the substream derived from r, so results do not depend on the number
// of workers. Refuses inputs without finite variance (InfiniteVariance) and
// constant outputs (DegenerateOutput).
GsiReport gsi_pick_freeze(const DependencyModel& m,
                          const std::vector<int>& input_group, long n,
                          RngStream rng);
GsiReport gsi_pick_freeze(const DependencyModel& m, long n, RngStream rng);

// Exact indices for the Gaussian model: the map is affine in its inputs, so
// first-order and total coincide and reduce to outer products of the
// pivot's covariance column. Computed in natural coordinate order, hence
// identical for every output permutation.
GsiReport gsi_gaussian_analytic(const Eigen::VectorXd& mu,
                                const CovarianceMatrix& sigma, int pivot);

// Quadrature indices of the non-latent input for the two constrained-square
// models; single output, so both types coincide. Absolute quadrature error
// below 1e-8.
enum class TrapezoidModel { r1, r2 };
GsiReport gsi_trapezoid_analytic(double beta, TrapezoidModel which);

enum class TieResolution {
  second_type_total,
  first_type_total,
  first_order,
  equivalent,
};

struct SelectionResult {
  int j_star = 0;  // pivot of the selected model
  std::vector<GsiReport> ranking;
  bool tie = false;
  TieResolution resolution = TieResolution::second_type_total;
};

// Argmax of the second-type total index; values within tol cascade to the
// first-type total and then the first-order indices. A full tie declares
// the models equivalent and returns the smallest pivot.
SelectionResult select_efficient_dm(const std::vector<GsiReport>& reports,
                                    double tol);

}  // namespace depmod
