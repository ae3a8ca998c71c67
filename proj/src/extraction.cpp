#include <algorithm>
#include <cmath>
#include <string>

#include "qbc/errors.hpp"
#include "qbc/linalg.hpp"
#include "qbc/protocols.hpp"
#include "quartic.hpp"
#include "sphere_search.hpp"

namespace qbc {
namespace {

using detail::effective_ops;
using detail::polish;
using detail::quartic;

constexpr double kSupportTolerance = 1e-9;
constexpr double kPeelTolerance = 1e-12;

void check_inputs(const ConnectionChannel& view, std::span<const DensityOperator> inputs) {
  if (inputs.size() != view.size()) {
    throw DimensionError(std::to_string(inputs.size()) + " input states for " +
                         std::to_string(view.size()) + " connections");
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].dim() != view.dims()[i]) {
      throw DimensionError("input " + std::to_string(i) + " has dimension " +
                           std::to_string(inputs[i].dim()) + ", connection expects " +
                           std::to_string(view.dims()[i]));
    }
  }
}

ComplexMatrix support_basis(const ComplexMatrix& rho) {
  const auto eig = eigh(rho, 1e-9);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > kSupportTolerance) cols.push_back(k);
  }
  ComplexMatrix basis(rho.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    basis.col(static_cast<Eigen::Index>(j)) = eig.vectors.col(cols[j]);
  }
  return basis;
}

double min_eigenvalue(const ComplexMatrix& m) { return eigh(m, 1e-9).values(0); }

// Largest q with lambda_min(rho - q phi phi^dag) >= -kPeelTolerance.
double peel_weight(const ComplexMatrix& rho, const ComplexVector& phi) {
  const ComplexMatrix proj = phi * phi.adjoint();
  auto feasible = [&](double q) { return min_eigenvalue(rho - q * proj) >= -kPeelTolerance; };
  double lo = 0.0;
  double hi = rho.trace().real();
  if (feasible(hi)) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

double mixed_fidelity(const KrausChannel& ch, const ConnectionGraph& graph,
                      std::span<const DensityOperator> inputs, std::size_t connection,
                      const ComplexVector& phi) {
  const ConnectionChannel view(ch, graph);
  check_inputs(view, inputs);
  if (connection >= view.size() ||
      static_cast<std::size_t>(phi.size()) != view.dims()[connection]) {
    throw DimensionError("mixed_fidelity: bad connection or state dimension");
  }
  std::vector<ComplexMatrix> states;
  for (const auto& rho : inputs) states.push_back(rho.matrix());
  return quartic(effective_ops(view, states, connection), phi.normalized());
}

ExtractionResult extract_subspace(const KrausChannel& ch, const ConnectionGraph& graph,
                                  std::span<const DensityOperator> inputs, double target_eta,
                                  const ExtractionOptions& options) {
  const ConnectionChannel view(ch, graph);
  check_inputs(view, inputs);
  if (!(target_eta >= 0.0)) throw DimensionError("extract_subspace: target eta must be >= 0");

  ExtractionResult result;
  std::vector<DensityOperator> current(inputs.begin(), inputs.end());
  result.eta = 1.0 - entanglement_fidelity(ch, current, graph);

  for (std::size_t i = 0; i < view.size(); ++i) {
    result.stage_eta.push_back(1.0 - entanglement_fidelity(ch, current, graph));
    std::vector<ComplexMatrix> states;
    for (const auto& rho : current) states.push_back(rho.matrix());
    const auto ops = effective_ops(view, states, i);

    ComplexMatrix remainder = current[i].matrix();
    double alpha = 0.0;
    for (std::size_t step = 0;; ++step) {
      const ComplexMatrix basis = support_basis(remainder);
      if (basis.cols() == 0) {
        throw InvalidState("extraction exhausted the support of input " + std::to_string(i));
      }
      std::vector<ComplexMatrix> restricted;
      for (const auto& m : ops) restricted.push_back(basis.adjoint() * m * basis);

      detail::SphereSearchOptions search;
      search.restarts = options.search.restarts;
      search.max_iterations = options.search.max_iterations;
      search.seed = RandomStream(options.search.seed, i).substream(step)();
      const std::size_t block[] = {static_cast<std::size_t>(basis.cols())};
      const auto found = detail::sphere_search(
          block, [&](std::span<const ComplexVector> p) { return quartic(restricted, p[0]); },
          search);
      const ComplexVector c = polish(restricted, found.point[0].normalized(),
                                     options.polish_iterations);
      const double worst = quartic(restricted, c);
      if (worst >= 1.0 - target_eta) {
        result.final_min_fidelity.push_back(worst);
        result.subspaces.emplace_back(basis);
        break;
      }

      const ComplexVector phi = basis * c;
      const double q = peel_weight(remainder, phi);
      remainder -= q * (phi * phi.adjoint());
      alpha += q;
      result.steps.push_back({i, q, phi, quartic(ops, phi)});
      if (alpha > options.max_removed_weight) {
        throw InvalidState("extraction removed weight " + std::to_string(alpha) +
                           " from input " + std::to_string(i) + ", above the limit " +
                           std::to_string(options.max_removed_weight));
      }
    }
    result.alphas.push_back(alpha);
    current[i] = DensityOperator(remainder / (1.0 - alpha), current[i].layout());
    result.remainders.push_back(current[i]);
  }
  return result;
}

PhaseAverageReport phase_average_bound(const KrausChannel& ch, const ConnectionGraph& graph,
                                       std::span<const SubspaceBasis> subspaces,
                                       const MinFidelityOptions& options) {
  PhaseAverageReport report;
  const auto worst = min_subspace_fidelity(ch, graph, subspaces, options);
  report.eta = std::max(0.0, 1.0 - worst.value);
  std::vector<DensityOperator> uniform;
  for (const auto& s : subspaces) {
    uniform.emplace_back(s.projector() / static_cast<double>(s.dim()),
                         SystemLayout({s.ambient_dim()}));
  }
  report.fe = entanglement_fidelity(ch, uniform, graph);
  report.rhs = 1.0 - std::pow(1.5, static_cast<double>(subspaces.size())) * report.eta;
  report.holds = report.fe >= report.rhs - 1e-9;
  return report;
}

}  // namespace qbc
