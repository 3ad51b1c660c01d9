#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "depmod/distribution.hpp"
#include "depmod/dm.hpp"

namespace depmod {

// Parsed model-spec file. Line-oriented key/value text, versioned:
//
//   version 1
//   family gaussian
//   pivot 1            (1-based)
//   perm 2 3           (1-based; omitted = ascending)
//   seed 42            (optional)
//   mu 0 0 0
//   sigma 9 3.75 6  3.75 25 15  6 15 16
//
// Family-specific keys: nu, a, b, p, d, beta, c, mode (eq|lt|on|in),
// orthant (signed|positive), sigmas, and repeated `marginal <family>
// <params...>` lines. '#' starts a comment; unknown keys are rejected.
struct DmSpec {
  std::string family;
  int pivot = 0;           // 1-based as written
  std::vector<int> perm;   // 1-based; empty = natural order
  std::uint64_t seed = 0;

  Eigen::VectorXd mu, a, b, sigmas;
  Eigen::MatrixXd sigma;
  double nu = 0, p = 0, c = 0, beta = 0;
  int d = 0;
  std::string mode;
  std::string orthant;
  std::vector<Dist> marginals;

  std::set<std::string> present;
  bool has(const std::string& key) const { return present.count(key) > 0; }
};

DmSpec parse_model_spec(const std::string& text);
DmSpec load_model_spec(const std::string& path);

// Dispatches to the family builders; missing fields raise SpecParseError
// naming the field, invalid values propagate InvalidParams.
DependencyModel build_dm(const DmSpec& spec);

// Marginal entry: family name plus numeric parameters.
Dist parse_dist(const std::vector<std::string>& tokens);

// FNV-1a 64-bit digest of the raw spec text, as fixed-width hex.
std::string spec_digest(const std::string& text);

}  // namespace depmod
