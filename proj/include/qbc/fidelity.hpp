#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qbc/channel.hpp"
#include "qbc/density.hpp"
#include "qbc/rng.hpp"
#include "qbc/subspace.hpp"

namespace qbc {

// A channel seen through its ConnectionFrame: Kraus operators act on
// (x)_i C^{d_i} with factor i = connection i on both sides.
class ConnectionChannel {
 public:
  ConnectionChannel(const KrausChannel& ch, const ConnectionGraph& graph);

  std::size_t size() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const { return total_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  // tr[ch(psi) psi] for the product state psi = (x) states[i].
  double pure_state_fidelity(std::span<const ComplexVector> states) const;
  // Same, for an already-formed product vector.
  double pure_state_fidelity(const ComplexVector& product) const;

  // Overlap of tr_{RB outside kept}[(I (x) ch)(Psi)] with (x)_{i in kept} Psi_i,
  // where Psi = (x)_i Psi_i and purifications[i] is Psi_i as an r_i x d_i
  // matrix (row = reference index, column = system index).
  double purified_overlap(std::span<const ComplexMatrix> purifications,
                          std::span<const std::size_t> kept) const;

  // Swap-trace sum  sum_K tr[(A_K^dag (x) A_K)(SWAP on removed legs (x) 1 on kept legs)].
  double swap_trace(std::span<const std::size_t> kept) const;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
  std::vector<ComplexMatrix> kraus_;
};

enum class FidelityRoute { definition, kraus_trace };

// Canonical purification sum_k sqrt(l_k)|k>_R|e_k> as a d x d matrix.
ComplexMatrix canonical_purification(const DensityOperator& rho);

double entanglement_fidelity(const KrausChannel& ch, std::span<const DensityOperator> inputs,
                             const ConnectionGraph& graph);
double local_entanglement_fidelity(const KrausChannel& ch, std::span<const DensityOperator> inputs,
                                   const ConnectionGraph& graph, std::size_t connection);
// F^[G'] for a subset G' of connections (sorted or not; duplicates rejected).
double group_fidelity(const KrausChannel& ch, std::span<const DensityOperator> inputs,
                      const ConnectionGraph& graph, std::span<const std::size_t> subset);

struct FidelityReport {
  double global_value = 0.0;
  std::vector<double> local_values;
  std::map<std::vector<std::size_t>, double> group_values;  // every non-empty subset
};
FidelityReport fidelity_report(const KrausChannel& ch, std::span<const DensityOperator> inputs,
                               const ConnectionGraph& graph);

double channel_fidelity(const KrausChannel& ch, const ConnectionGraph& graph,
                        FidelityRoute route = FidelityRoute::kraus_trace);
// Group channel fidelity F_c^[G'] (maximally entangled inputs).
double group_channel_fidelity(const KrausChannel& ch, const ConnectionGraph& graph,
                              std::span<const std::size_t> subset, FidelityRoute route);
double group_channel_fidelity_kraus(const KrausChannel& ch, const ConnectionGraph& graph,
                                    std::span<const std::size_t> subset);

double pure_state_fidelity(const KrausChannel& ch, const ConnectionGraph& graph,
                           std::span<const ComplexVector> states);

struct MinFidelityOptions {
  std::size_t restarts = 32;
  std::size_t max_iterations = 300;
  std::uint64_t seed = 0;
};

struct MinFidelityResult {
  double value = 1.0;                  // upper bound on the true minimum
  std::vector<ComplexVector> states;   // minimizing product state, ambient coordinates
  std::size_t best_restart = 0;
};

// Heuristic minimum of the pure-state fidelity over product states drawn
// from the given subspaces (one per connection).
MinFidelityResult min_subspace_fidelity(const KrausChannel& ch, const ConnectionGraph& graph,
                                        std::span<const SubspaceBasis> subspaces,
                                        const MinFidelityOptions& options = {});

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

// Average of the pure-state fidelity over independent Haar product states.
MonteCarloEstimate average_fidelity_mc(const KrausChannel& ch, const ConnectionGraph& graph,
                                       std::size_t samples, RandomStream& rng);

// Closed form over all 2^|G| group channel fidelities:
//   (1/D+) sum_{S subset G} (D / prod_{j in S} d_j) F_c^[G \ S],  F_c^[{}] = 1.
double average_fidelity_exact(const KrausChannel& ch, const ConnectionGraph& graph,
                              FidelityRoute route = FidelityRoute::kraus_trace);

inline constexpr std::size_t kMaxSubsetConnections = 16;

}  // namespace qbc
