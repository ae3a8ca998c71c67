#include <cmath>
#include <deque>
#include <string>

#include "qbc/errors.hpp"
#include "qbc/haar.hpp"
#include "qbc/linalg.hpp"
#include "qbc/protocols.hpp"

namespace qbc {
namespace {

// Global phase fixed so the first entry with modulus above 1e-8 is real positive.
ComplexMatrix canonical_phase(const ComplexMatrix& u) {
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      if (std::abs(u(r, c)) > 1e-8) return u * (std::abs(u(r, c)) / u(r, c));
    }
  }
  return u;
}

}  // namespace

void require_unitary_ensemble(const UnitaryEnsemble& ensemble, double tol) {
  if (ensemble.elements.empty()) throw DimensionError("unitary ensemble is empty");
  const auto d = ensemble.elements[0].rows();
  for (std::size_t k = 0; k < ensemble.elements.size(); ++k) {
    const auto& u = ensemble.elements[k];
    if (u.rows() != d || u.cols() != d) throw DimensionError("unitary ensemble: mixed dimensions");
    if (!is_unitary(u, tol)) {
      throw DimensionError("unitary ensemble: element " + std::to_string(k) + " is not unitary");
    }
  }
}

UnitaryEnsemble clifford_1q() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix h(2, 2);
  h << r, r, r, -r;
  ComplexMatrix s(2, 2);
  s << 1.0, 0.0, 0.0, Complex(0.0, 1.0);
  const ComplexMatrix generators[] = {h, s};

  UnitaryEnsemble group;
  group.exact_design = true;
  group.elements.push_back(ComplexMatrix::Identity(2, 2));
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const ComplexMatrix current = group.elements[queue.front()];
    queue.pop_front();
    for (const auto& g : generators) {
      const ComplexMatrix next = canonical_phase(g * current);
      bool known = false;
      for (const auto& e : group.elements) {
        if (max_abs(e - next) < 1e-9) {
          known = true;
          break;
        }
      }
      if (!known) {
        group.elements.push_back(next);
        queue.push_back(group.elements.size() - 1);
      }
    }
  }
  return group;
}

UnitaryEnsemble haar_ensemble(std::size_t d, std::size_t size, RandomStream& rng) {
  if (d == 0 || size == 0) throw DimensionError("haar_ensemble: empty ensemble");
  UnitaryEnsemble out;
  for (std::size_t k = 0; k < size; ++k) out.elements.push_back(haar_unitary(d, rng));
  return out;
}

UnitaryEnsemble design_ensemble(std::size_t d, std::size_t sampled_size, RandomStream& rng) {
  if (d == 2) return clifford_1q();
  return haar_ensemble(d, sampled_size, rng);
}

}  // namespace qbc
