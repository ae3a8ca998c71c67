#include "fixtures.hpp"

#include "qbc/builders.hpp"

namespace qbc::cli {

KrausChannel qutrit_erasure_to_zero() {
  ComplexMatrix keep = ComplexMatrix::Zero(3, 3);
  keep(0, 0) = 1.0;
  keep(1, 1) = 1.0;
  ComplexMatrix drop = ComplexMatrix::Zero(3, 3);
  drop(0, 2) = 1.0;
  const SystemLayout leg({3});
  return KrausChannel({keep, drop}, leg, leg);
}

std::vector<Fixture> builtin_fixtures() {
  const std::size_t qubit[] = {2};
  const std::size_t qubits[] = {2, 2};
  const std::size_t qutrit[] = {3};
  const auto one_qubit = ConnectionGraph::diagonal(qubit);
  const auto two_qubits = ConnectionGraph::diagonal(qubits);

  std::vector<Fixture> out;
  out.push_back({"identity-qubit", builders::identity(SystemLayout({2})), one_qubit});
  out.push_back({"depolarizing-qubit-p0.3", builders::depolarizing(2, 0.3), one_qubit});
  out.push_back({"dephasing-qubit-p0.2", builders::dephasing(0.2), one_qubit});
  const KrausChannel pair[] = {builders::dephasing(0.1), builders::depolarizing(2, 0.5)};
  out.push_back({"dephasing-x-depolarizing", builders::product(pair, two_qubits), two_qubits});
  RandomStream rng(20240611);
  out.push_back({"random-qubit-pair",
                 builders::random_channel(SystemLayout({2, 2}), SystemLayout({2, 2}), 3, rng),
                 two_qubits});
  out.push_back({"qutrit-erasure-to-zero", qutrit_erasure_to_zero(),
                 ConnectionGraph::diagonal(qutrit)});
  return out;
}

}  // namespace qbc::cli
