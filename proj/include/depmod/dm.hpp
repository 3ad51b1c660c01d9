#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "depmod/distribution.hpp"
#include "depmod/rng.hpp"

namespace depmod {

enum class SumMode { eq, lt };
enum class QuadMode { on, in };
enum class Orthant { all, positive };

// Law of the free (pivot) input. Chains built from transformed reference
// variables need more than the bare family enum: an optional random sign,
// an affine map, and an optional monotone warp x = Q_marginal(F_ref(v))
// compose in that order.
struct PivotLaw {
  Dist base = Dist::uniform(0, 1);
  bool sign = false;
  double scale = 1.0;
  double shift = 0.0;
  bool warped = false;
  Dist ref = Dist::uniform(0, 1);
  Dist marginal = Dist::uniform(0, 1);

  double sample(RngStream& rng) const;
  double cdf(double x) const;
  double quantile(double u) const;
  std::pair<double, double> support() const;
  bool finite_variance() const;
  std::string describe() const;
};

// Deterministic map from (pivot value, latent vector) to the remaining
// coordinates, listed in permutation order.
using MapFn = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

// Executable dependency model: one coordinate kept as the free input and a
// triangular deterministic map producing the others from fresh independent
// latents. Immutable after construction; sampling is safe from multiple
// threads as long as each caller owns its RngStream.
class DependencyModel {
 public:
  DependencyModel(std::string family, int dim, int pivot,
                  std::vector<int> perm, PivotLaw pivot_law,
                  std::vector<Dist> latents, MapFn map);

  const std::string& family() const { return family_; }
  int dim() const { return dim_; }
  int pivot() const { return pivot_; }
  const std::vector<int>& perm() const { return perm_; }
  const PivotLaw& pivot_law() const { return pivot_law_; }
  int n_latents() const { return static_cast<int>(latents_.size()); }
  const Dist& latent_law(int k) const { return latents_[k]; }

  double sample_pivot(RngStream& rng) const { return pivot_law_.sample(rng); }
  double sample_latent(int k, RngStream& rng) const;
  Eigen::VectorXd sample_latents(RngStream& rng) const;

  // Raw map evaluation; no domain checks.
  Eigen::VectorXd map(double x_pivot, const Eigen::VectorXd& z) const {
    return map_(x_pivot, z);
  }

  const MapFn& map_fn() const { return map_; }

  // Same model under a different family label.
  DependencyModel renamed(std::string family) const {
    DependencyModel copy = *this;
    copy.family_ = std::move(family);
    return copy;
  }

  bool finite_variance_inputs() const;

 private:
  std::string family_;
  int dim_;
  int pivot_;
  std::vector<int> perm_;
  PivotLaw pivot_law_;
  std::vector<Dist> latents_;
  MapFn map_;
};

// Checks inputs against the open pivot/latent supports (DomainError on
// violation), then evaluates the map.
Eigen::VectorXd push_forward(const DependencyModel& m, double x_pivot,
                             const Eigen::VectorXd& z);

struct SampleBatch {
  Eigen::MatrixXd values;  // n x d, columns in natural coordinate order
  std::uint64_t seed = 0;
  std::string meta;
};

// Draws n rows. Row i uses a substream derived from the batch stream and
// the row index, so results do not depend on how work is partitioned.
SampleBatch sample_batch(const DependencyModel& m, long n, RngStream& rng);

// Model for Y = T X + mu, where T is lower triangular in the model's
// (pivot, perm...) coordinate order and X follows the base model. Requires
// T(0,0) != 0 to recover the pivot (SingularLift otherwise).
DependencyModel linear_lift(const DependencyModel& m, const Eigen::MatrixXd& t,
                            const Eigen::VectorXd& mu);

// Conditional-quantile callback: maps (probability, pivot value, previous
// outputs) to the next output.
using ConditionalQuantile =
    std::function<double(double, double, const Eigen::VectorXd&)>;

// Generic chain with uniform latents: output k applies callback k to
// (z_k, pivot, outputs 0..k-1). Callbacks must be nondecreasing in the
// probability argument; spot checks at construction throw
// MonotonicityViolation.
DependencyModel chain_from_conditionals(int dim, int pivot,
                                        std::vector<int> perm,
                                        PivotLaw pivot_law,
                                        std::vector<ConditionalQuantile> cond);

// Validates that perm is a permutation of {0..d-1} minus the pivot.
void validate_pivot_perm(int dim, int pivot, const std::vector<int>& perm);

// Ascending default output order for a pivot.
std::vector<int> natural_perm(int dim, int pivot);

}  // namespace depmod
