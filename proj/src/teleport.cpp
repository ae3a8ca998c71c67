#include <cmath>
#include <string>

#include "qbc/errors.hpp"
#include "qbc/linalg.hpp"
#include "qbc/protocols.hpp"

namespace qbc {
namespace {

// X^j Z^k with X|a> = |a+1>, Z|a> = w^a |a>.
ComplexMatrix weyl(std::size_t d, std::size_t j, std::size_t k) {
  const double pi = std::acos(-1.0);
  ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t a = 0; a < d; ++a) {
    const double angle = 2.0 * pi * static_cast<double>((k * a) % d) / static_cast<double>(d);
    p(static_cast<Eigen::Index>((a + j) % d), static_cast<Eigen::Index>(a)) = std::polar(1.0, angle);
  }
  return p;
}

}  // namespace

KrausChannel teleport_channel(const DensityOperator& resource) {
  const std::size_t total = resource.dim();
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(total))));
  if (d * d != total) {
    throw DimensionError("teleport: resource dimension " + std::to_string(total) +
                         " is not d x d");
  }
  const auto n = static_cast<Eigen::Index>(d);
  const double root = std::sqrt(static_cast<double>(d));
  const auto eig = eigh(resource.matrix());
  const RealVector mu = clip_spectrum(eig.values);

  std::vector<ComplexMatrix> ops;
  for (Eigen::Index r = 0; r < mu.size(); ++r) {
    if (mu(r) <= 0.0) continue;
    const ComplexVector v = std::sqrt(mu(r)) * eig.vectors.col(r);  // v(a*d + b)
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        // Outcome |Phi_jk> = (P_jk (x) I)|Phi+>, corrected by P_jk on B.
        const ComplexMatrix p = weyl(d, j, k);
        ComplexMatrix m = ComplexMatrix::Zero(n, n);  // rows B, cols C
        for (Eigen::Index b = 0; b < n; ++b) {
          for (Eigen::Index c = 0; c < n; ++c) {
            Complex acc = 0.0;
            for (Eigen::Index a = 0; a < n; ++a) acc += std::conj(p(c, a)) * v(a * n + b);
            m(b, c) = acc / root;
          }
        }
        ops.push_back(p * m);
      }
    }
  }
  const SystemLayout leg({d});
  return KrausChannel(std::move(ops), leg, leg);
}

}  // namespace qbc
