#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qbc/layout.hpp"
#include "qbc/types.hpp"

namespace qbc {

// Kronecker product, leg 0 most significant. Throws CapacityExceeded when
// either resulting dimension passes kMaxDimension.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);
ComplexVector kron_all(std::span<const ComplexVector> factors);

// Reduced operator on the `keep` legs (any order given; output keeps the
// original relative order). `m` must be square with dim == layout.total_dim().
ComplexMatrix partial_trace(const ComplexMatrix& m, const SystemLayout& layout,
                            std::span<const std::size_t> keep);

// Leg permutations. New leg j is old leg perm[j].
ComplexVector permute_legs(const ComplexVector& v, const SystemLayout& layout,
                           std::span<const std::size_t> perm);
ComplexMatrix permute_legs(const ComplexMatrix& m, const SystemLayout& layout,
                           std::span<const std::size_t> perm);
// Rectangular operator (rows on `out`, columns on `in`) with independent
// permutations of its output and input legs.
ComplexMatrix permute_legs(const ComplexMatrix& m, const SystemLayout& out,
                           std::span<const std::size_t> out_perm, const SystemLayout& in,
                           std::span<const std::size_t> in_perm);

// Index map old -> new for a leg permutation; building block for the above.
std::vector<std::size_t> permutation_index_map(const SystemLayout& layout,
                                               std::span<const std::size_t> perm);

double hermitian_defect(const ComplexMatrix& m);

struct EigenDecomposition {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns
};

// Hermitian eigendecomposition. Inputs with defect <= tol are symmetrized
// first; larger defects throw InvalidState.
EigenDecomposition eigh(const ComplexMatrix& h, double tol = kHermitianTolerance);

// Eigenvalues in [-tol, 0) become 0; anything more negative throws.
RealVector clip_spectrum(const RealVector& values, double tol = kStateTolerance);

// Square root of a PSD matrix via eigh with clipping.
ComplexMatrix sqrt_psd(const ComplexMatrix& m);

// -sum p log2 p with 0 log 0 = 0.
double shannon_entropy_bits(std::span<const double> probabilities);

// Von Neumann entropy in bits of a (not necessarily normalized) PSD matrix's
// spectrum; the spectrum is used as-is.
double spectral_entropy_bits(const ComplexMatrix& m);

double max_abs(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& u, double tol);

}  // namespace qbc
