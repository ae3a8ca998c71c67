#include "qbc/subspace.hpp"

#include <string>

#include "qbc/errors.hpp"
#include "qbc/linalg.hpp"

namespace qbc {

SubspaceBasis::SubspaceBasis(ComplexMatrix columns, double tol) : columns_(std::move(columns)) {
  if (columns_.cols() == 0) throw DimensionError("subspace basis: empty subspace");
  const auto k = columns_.cols();
  const double defect = max_abs(columns_.adjoint() * columns_ - ComplexMatrix::Identity(k, k));
  if (!(defect <= tol)) {
    throw DimensionError("subspace basis: columns are not orthonormal (Gram defect " +
                         std::to_string(defect) + ")");
  }
}

SubspaceBasis SubspaceBasis::full(std::size_t ambient) {
  const auto d = static_cast<Eigen::Index>(ambient);
  return SubspaceBasis(ComplexMatrix::Identity(d, d));
}

double SubspaceBasis::overlap_with(const SubspaceBasis& other) const {
  if (other.ambient_dim() != ambient_dim()) throw DimensionError("subspace overlap: ambient dims differ");
  if (other.dim() < dim()) return 0.0;
  const ComplexMatrix m = other.columns_.adjoint() * columns_;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const double smallest = svd.singularValues().minCoeff();
  return smallest * smallest;
}

}  // namespace qbc
