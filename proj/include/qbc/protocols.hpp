#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qbc/channel.hpp"
#include "qbc/density.hpp"
#include "qbc/fidelity.hpp"
#include "qbc/rng.hpp"
#include "qbc/subspace.hpp"

namespace qbc {

// Uniformly weighted set of d x d unitaries.
struct UnitaryEnsemble {
  std::vector<ComplexMatrix> elements;
  bool exact_design = false;  // known unitary 2-design (not a finite sample)

  std::size_t dim() const { return elements.empty() ? 0 : static_cast<std::size_t>(elements[0].rows()); }
  std::size_t size() const { return elements.size(); }
};

// Checks that the elements are equal-size unitaries within tol.
void require_unitary_ensemble(const UnitaryEnsemble& ensemble, double tol = 1e-10);

// The 24 single-qubit Cliffords modulo global phase, generated from H and S.
UnitaryEnsemble clifford_1q();
// `size` independent Haar unitaries.
UnitaryEnsemble haar_ensemble(std::size_t d, std::size_t size, RandomStream& rng);
// Clifford group for d = 2, otherwise a sampled Haar ensemble of `sampled_size`.
UnitaryEnsemble design_ensemble(std::size_t d, std::size_t sampled_size, RandomStream& rng);

// rho -> sum_n (1/N) (x)U_n^dag ch((x)U_n rho (x)U_n^dag) (x)U_n, one ensemble
// per connection. Falls back to a minimal Kraus set when the literal one
// would exceed max_kraus.
KrausChannel twirl_channel(const KrausChannel& ch, const ConnectionGraph& graph,
                           std::span<const UnitaryEnsemble> ensembles,
                           std::size_t max_kraus = kMaxKrausCount);

// Generalized Bell measurement on (input, A) with Heisenberg-Weyl correction
// on B, over a resource state on A (x) B with equal dims.
KrausChannel teleport_channel(const DensityOperator& resource);

struct ExtractionOptions {
  MinFidelityOptions search;
  double max_removed_weight = 0.5;
  std::size_t polish_iterations = 100;
};

struct ExtractionStep {
  std::size_t connection = 0;
  double weight = 0.0;    // q_m
  ComplexVector state;    // phi_m
  double fidelity = 0.0;  // mixed fidelity of phi_m with the other inputs
};

struct ExtractionResult {
  std::vector<SubspaceBasis> subspaces;        // support of each remainder
  std::vector<double> alphas;                  // removed weight per connection
  std::vector<ExtractionStep> steps;
  std::vector<DensityOperator> remainders;     // normalized remainders
  double eta = 0.0;                            // 1 - F_e of the original inputs
  std::vector<double> stage_eta;               // 1 - F_e when connection i is processed
  std::vector<double> final_min_fidelity;      // heuristic minimum at the stopping point
};

// Mixed fidelity F_e(phi (x) others) for connection i given pure phi, others mixed.
double mixed_fidelity(const KrausChannel& ch, const ConnectionGraph& graph,
                      std::span<const DensityOperator> inputs, std::size_t connection,
                      const ComplexVector& phi);

// Greedy peeling of worst-case pure states from each input support until the
// remaining support clears 1 - target_eta. Throws InvalidState when the
// removed weight of a connection exceeds max_removed_weight.
ExtractionResult extract_subspace(const KrausChannel& ch, const ConnectionGraph& graph,
                                  std::span<const DensityOperator> inputs, double target_eta,
                                  const ExtractionOptions& options = {});

struct PhaseAverageReport {
  double eta = 0.0;          // 1 - heuristic min subspace fidelity
  double fe = 0.0;           // F_e at the uniform states on the subspaces
  double rhs = 0.0;          // 1 - (3/2)^|G| eta
  bool holds = false;        // fe >= rhs - 1e-9
};
PhaseAverageReport phase_average_bound(const KrausChannel& ch, const ConnectionGraph& graph,
                                       std::span<const SubspaceBasis> subspaces,
                                       const MinFidelityOptions& options = {});

}  // namespace qbc
