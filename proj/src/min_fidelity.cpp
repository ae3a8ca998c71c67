#include <algorithm>
#include <string>

#include "qbc/errors.hpp"
#include "qbc/fidelity.hpp"
#include "qbc/linalg.hpp"
#include "quartic.hpp"
#include "sphere_search.hpp"

namespace qbc {

MinFidelityResult min_subspace_fidelity(const KrausChannel& ch, const ConnectionGraph& graph,
                                        std::span<const SubspaceBasis> subspaces,
                                        const MinFidelityOptions& options) {
  const ConnectionChannel view(ch, graph);
  if (subspaces.size() != view.size()) {
    throw DimensionError("min_subspace_fidelity: " + std::to_string(subspaces.size()) +
                         " subspaces for " + std::to_string(view.size()) + " connections");
  }
  std::vector<std::size_t> block_dims;
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    if (subspaces[i].ambient_dim() != view.dims()[i]) {
      throw DimensionError("min_subspace_fidelity: subspace " + std::to_string(i) +
                           " lives in the wrong space");
    }
    block_dims.push_back(subspaces[i].dim());
  }

  auto embed = [&](std::span<const ComplexVector> coefficients) {
    std::vector<ComplexVector> states;
    states.reserve(coefficients.size());
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      states.push_back(subspaces[i].columns() * coefficients[i]);
    }
    return states;
  };
  auto objective = [&](std::span<const ComplexVector> coefficients) {
    const auto states = embed(coefficients);
    return view.pure_state_fidelity(kron_all(std::span<const ComplexVector>(states)));
  };

  detail::SphereSearchOptions search;
  search.restarts = options.restarts;
  search.max_iterations = options.max_iterations;
  search.seed = options.seed;
  search.maximize = false;
  const auto found = detail::sphere_search(block_dims, objective, search);

  // Block-wise polish: with the other states fixed, the fidelity is a
  // quartic form in one block.
  std::vector<ComplexVector> point = found.point;
  double value = objective(point);
  for (std::size_t sweep = 0; sweep < 20; ++sweep) {
    const double before = value;
    for (std::size_t i = 0; i < point.size(); ++i) {
      const auto states = embed(point);
      std::vector<ComplexMatrix> projectors;
      for (const auto& s : states) projectors.push_back(s * s.adjoint());
      std::vector<ComplexMatrix> restricted;
      const auto& basis = subspaces[i].columns();
      for (const auto& m : detail::effective_ops(view, projectors, i)) {
        restricted.push_back(basis.adjoint() * m * basis);
      }
      point[i] = detail::polish(restricted, point[i].normalized(), 50);
    }
    value = objective(point);
    if (!(value < before - 1e-15)) break;
  }

  MinFidelityResult result;
  result.value = std::min(value, found.value);
  result.states = embed(value <= found.value ? point : found.point);
  result.best_restart = found.restart;
  return result;
}

}  // namespace qbc
