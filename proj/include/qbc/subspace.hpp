#pragma once

#include <cstddef>
#include <span>

#include "qbc/types.hpp"

namespace qbc {

// Orthonormal columns spanning a subspace of C^ambient.
class SubspaceBasis {
 public:
  explicit SubspaceBasis(ComplexMatrix columns, double tol = 1e-10);
  static SubspaceBasis full(std::size_t ambient);

  std::size_t dim() const { return static_cast<std::size_t>(columns_.cols()); }
  std::size_t ambient_dim() const { return static_cast<std::size_t>(columns_.rows()); }
  const ComplexMatrix& columns() const { return columns_; }
  ComplexMatrix projector() const { return columns_ * columns_.adjoint(); }

  // Smallest squared singular value of other^dag * this, i.e. the worst-case
  // squared overlap of a unit vector of `this` with `other`. 1 iff this is
  // contained in other.
  double overlap_with(const SubspaceBasis& other) const;

 private:
  ComplexMatrix columns_;
};

}  // namespace qbc
