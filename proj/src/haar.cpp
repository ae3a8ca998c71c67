#include "qbc/haar.hpp"

#include <cmath>

namespace qbc {

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, RandomStream& rng) {
  ComplexMatrix g(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index c = 0; c < g.cols(); ++c) {
    for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) = rng.complex_normal();
  }
  return g;
}

ComplexMatrix haar_unitary(std::size_t d, RandomStream& rng) {
  const ComplexMatrix z = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

ComplexVector haar_state(std::size_t d, RandomStream& rng) {
  return haar_unitary(d, rng).col(0);
}

}  // namespace qbc
