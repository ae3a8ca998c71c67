#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qbc/fidelity.hpp"

namespace qbc::detail {

// C_K = tr_{others}[A_K (I_i (x) others)] in connection order, so that the
// fidelity with connection i in a pure state phi is sum_K |<phi|C_K|phi>|^2.
std::vector<ComplexMatrix> effective_ops(const ConnectionChannel& view,
                                         std::span<const ComplexMatrix> states,
                                         std::size_t connection);

double quartic(std::span<const ComplexMatrix> ops, const ComplexVector& c);

// Levenberg-Marquardt on the residuals <c|M_K|c> / <c|c>; every accepted
// step lowers the quartic value.
ComplexVector polish(std::span<const ComplexMatrix> ops, ComplexVector c, std::size_t iterations);

}  // namespace qbc::detail
