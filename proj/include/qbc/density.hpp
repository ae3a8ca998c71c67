#pragma once

#include <cstddef>
#include <span>

#include "qbc/layout.hpp"
#include "qbc/rng.hpp"
#include "qbc/types.hpp"

namespace qbc {

// Hermitian, PSD, unit-trace matrix on a layout. The constructor checks all
// three within `tol` and stores the Hermitian part.
class DensityOperator {
 public:
  DensityOperator(ComplexMatrix m, SystemLayout layout, double tol = kStateTolerance);

  static DensityOperator pure(const ComplexVector& psi, SystemLayout layout);
  static DensityOperator maximally_mixed(SystemLayout layout);

  const ComplexMatrix& matrix() const { return matrix_; }
  const SystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return layout_.total_dim(); }

  DensityOperator reduced(std::span<const std::size_t> keep) const;

 private:
  ComplexMatrix matrix_;
  SystemLayout layout_;
};

ComplexVector phi_plus_vector(std::size_t d);
DensityOperator phi_plus(std::size_t d);
// Random state from a Ginibre matrix; rank 0 means full rank.
DensityOperator random_density(const SystemLayout& layout, RandomStream& rng,
                               std::size_t rank = 0);

double entropy(const DensityOperator& rho);
// (tr|sqrt(rho) sqrt(sigma)|)^2
double uhlmann_fidelity(const DensityOperator& rho, const DensityOperator& sigma);

}  // namespace qbc
