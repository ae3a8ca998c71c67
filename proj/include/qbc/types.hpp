#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qbc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Desk-scale limits. Every dense operator, state vector and Kraus list is
// bounded by these.
inline constexpr std::size_t kMaxDimension = 4096;
inline constexpr std::size_t kMaxKrausCount = 4096;

// Tolerances shared across modules.
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kCompletenessTolerance = 1e-9;

}  // namespace qbc
