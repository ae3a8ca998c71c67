#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qbc/channel.hpp"
#include "qbc/rng.hpp"

namespace qbc::builders {

KrausChannel identity(const SystemLayout& layout);
// rho -> (1-p) rho + p I/d
KrausChannel depolarizing(std::size_t d, double p);
// rho -> (1-p) rho + p Z rho Z
KrausChannel dephasing(double p);
// Tensor product of single-connection channels, one per connection of
// `graph` in order. The input space of sender s is the product of its
// connections' legs (in connection order), likewise for receivers.
KrausChannel product(std::span<const KrausChannel> per_connection, const ConnectionGraph& graph);

// Stinespring fixture: Gaussian (out*env) x in matrix, orthonormalized
// columns, sliced into env Kraus blocks.
KrausChannel random_channel(const SystemLayout& in, const SystemLayout& out, std::size_t env,
                            RandomStream& rng);
// Gaussian Kraus set renormalized by (sum A^dag A)^{-1/2}.
KrausChannel random_channel_renormalized(const SystemLayout& in, const SystemLayout& out,
                                         std::size_t count, RandomStream& rng);

// (1-w) a + w b as a Kraus set; requires equal layouts.
KrausChannel mixture(const KrausChannel& a, const KrausChannel& b, double w);

// Unitary channel.
KrausChannel unitary(const ComplexMatrix& u, const SystemLayout& layout);

// Pauli matrices.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace qbc::builders
