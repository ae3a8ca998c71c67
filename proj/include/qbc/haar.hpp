#pragma once

#include <cstddef>

#include "qbc/rng.hpp"
#include "qbc/types.hpp"

namespace qbc {

// d x d matrix of iid complex standard Gaussians.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, RandomStream& rng);

// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
// diagonal moved into Q.
ComplexMatrix haar_unitary(std::size_t d, RandomStream& rng);

// U|0> for Haar U.
ComplexVector haar_state(std::size_t d, RandomStream& rng);

}  // namespace qbc
