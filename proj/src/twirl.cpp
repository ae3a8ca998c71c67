#include <cmath>
#include <string>

#include "qbc/connection_frame.hpp"
#include "qbc/errors.hpp"
#include "qbc/linalg.hpp"
#include "qbc/protocols.hpp"

namespace qbc {

KrausChannel twirl_channel(const KrausChannel& ch, const ConnectionGraph& graph,
                           std::span<const UnitaryEnsemble> ensembles, std::size_t max_kraus) {
  const ConnectionFrame frame(ch, graph);
  if (ensembles.size() != frame.size()) {
    throw DimensionError("twirl: " + std::to_string(ensembles.size()) + " ensembles for " +
                         std::to_string(frame.size()) + " connections");
  }
  double combos = 1.0;
  for (std::size_t i = 0; i < ensembles.size(); ++i) {
    require_unitary_ensemble(ensembles[i]);
    if (ensembles[i].dim() != frame.dims()[i]) {
      throw DimensionError("twirl: ensemble " + std::to_string(i) + " has dimension " +
                           std::to_string(ensembles[i].dim()) + ", connection expects " +
                           std::to_string(frame.dims()[i]));
    }
    combos *= static_cast<double>(ensembles[i].size());
  }
  const auto kraus = frame.connection_kraus(ch);
  const double literal_count = combos * static_cast<double>(kraus.size());
  const bool via_choi = literal_count > static_cast<double>(max_kraus);
  const auto d = static_cast<Eigen::Index>(frame.total_dim());
  if (via_choi && static_cast<std::size_t>(d * d) > kMaxDimension) {
    throw CapacityExceeded("twirl: " + std::to_string(literal_count) +
                           " Kraus operators and Choi dimension " + std::to_string(d * d) +
                           " both exceed their caps");
  }

  const double scale = 1.0 / std::sqrt(combos);
  std::vector<ComplexMatrix> ops;
  ComplexMatrix choi;
  if (via_choi) choi = ComplexMatrix::Zero(d * d, d * d);
  ComplexVector v(d * d);

  std::vector<std::size_t> index(ensembles.size(), 0);
  for (;;) {
    ComplexMatrix u = ComplexMatrix::Ones(1, 1);
    for (std::size_t i = 0; i < ensembles.size(); ++i) u = kron(u, ensembles[i].elements[index[i]]);
    for (const auto& a : kraus) {
      const ComplexMatrix b = frame.to_native_order(scale * (u.adjoint() * a * u));
      if (via_choi) {
        for (Eigen::Index r = 0; r < d; ++r) {
          for (Eigen::Index c = 0; c < d; ++c) v(r * d + c) = b(r, c);
        }
        choi.noalias() += v * v.adjoint();
      } else {
        ops.push_back(b);
      }
    }
    std::size_t i = ensembles.size();
    while (i > 0 && ++index[i - 1] == ensembles[i - 1].size()) index[--i] = 0;
    if (i == 0) break;
  }
  if (via_choi) return kraus_from_choi(choi, ch.in_layout(), ch.out_layout());
  return KrausChannel(std::move(ops), ch.in_layout(), ch.out_layout());
}

}  // namespace qbc
