#include "qbc/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbc/errors.hpp"
#include "qbc/haar.hpp"
#include "qbc/linalg.hpp"

namespace qbc {

DensityOperator::DensityOperator(ComplexMatrix m, SystemLayout layout, double tol)
    : layout_(std::move(layout)) {
  const auto n = static_cast<Eigen::Index>(layout_.total_dim());
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError("density operator: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " but layout " + layout_.describe() +
                         " has dimension " + std::to_string(n));
  }
  const double herm = hermitian_defect(m);
  if (!(herm <= tol)) {
    throw InvalidState("density operator: not Hermitian (defect " + std::to_string(herm) + ")");
  }
  matrix_ = 0.5 * (m + m.adjoint());
  const double trace_defect = std::abs(matrix_.trace().real() - 1.0);
  if (!(trace_defect <= tol)) {
    throw InvalidState("density operator: trace differs from 1 by " +
                       std::to_string(trace_defect));
  }
  const auto eig = eigh(matrix_, tol);
  if (eig.values.size() > 0 && eig.values(0) < -tol) {
    throw InvalidState("density operator: negative eigenvalue " +
                       std::to_string(eig.values(0)));
  }
}

DensityOperator DensityOperator::pure(const ComplexVector& psi, SystemLayout layout) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw InvalidState("pure state: vector norm " + std::to_string(norm) + " is not 1");
  }
  return DensityOperator(psi * psi.adjoint(), std::move(layout));
}

DensityOperator DensityOperator::maximally_mixed(SystemLayout layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  return DensityOperator(ComplexMatrix::Identity(d, d) / static_cast<double>(d),
                         std::move(layout));
}

DensityOperator DensityOperator::reduced(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  return DensityOperator(partial_trace(matrix_, layout_, sorted), layout_.select(sorted));
}

ComplexVector phi_plus_vector(std::size_t d) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t g = 0; g < d; ++g) v(static_cast<Eigen::Index>(g * d + g)) = amp;
  return v;
}

DensityOperator phi_plus(std::size_t d) {
  return DensityOperator::pure(phi_plus_vector(d), SystemLayout({d, d}));
}

DensityOperator random_density(const SystemLayout& layout, RandomStream& rng, std::size_t rank) {
  const std::size_t d = layout.total_dim();
  const std::size_t r = rank == 0 ? d : rank;
  const ComplexMatrix g = ginibre(d, r, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(std::move(rho), layout);
}

double entropy(const DensityOperator& rho) { return spectral_entropy_bits(rho.matrix()); }

double uhlmann_fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionError("uhlmann_fidelity: dimensions " + std::to_string(rho.dim()) + " and " +
                         std::to_string(sigma.dim()) + " differ");
  }
  // tr|sqrt(rho) sqrt(sigma)| = tr sqrt(sqrt(rho) sigma sqrt(rho)).
  const ComplexMatrix root = sqrt_psd(rho.matrix());
  ComplexMatrix inner = root * sigma.matrix() * root;
  inner = 0.5 * (inner + inner.adjoint());
  const RealVector values = clip_spectrum(eigh(inner).values, 1e-9);
  const double tr = values.cwiseSqrt().sum();
  return std::min(1.0, tr * tr);
}

}  // namespace qbc
