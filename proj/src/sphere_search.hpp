#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qbc/types.hpp"

namespace qbc::detail {

// Local search over a product of unit spheres (one complex vector per block)
// with central-difference gradients, tangent projection, and Armijo
// backtracking. Each restart starts from a Gaussian point drawn from its own
// substream, except the first `initial.size()` restarts which start from the
// given points.
struct SphereSearchOptions {
  std::size_t restarts = 16;
  std::size_t max_iterations = 300;
  std::uint64_t seed = 0;
  bool maximize = false;
  double gradient_tolerance = 1e-9;
  double finite_difference_step = 1e-6;
  std::vector<std::vector<ComplexVector>> initial;
};

struct SphereSearchResult {
  double value = 0.0;
  std::vector<ComplexVector> point;
  std::size_t restart = 0;
};

using SphereObjective = std::function<double(std::span<const ComplexVector>)>;
// Called on the start point and every accepted iterate.
using SphereObserver = std::function<void(std::span<const ComplexVector>, double, std::size_t)>;

SphereSearchResult sphere_search(std::span<const std::size_t> block_dims,
                                 const SphereObjective& objective,
                                 const SphereSearchOptions& options,
                                 const SphereObserver& observer = {});

}  // namespace qbc::detail
