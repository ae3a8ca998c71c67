#include "quartic.hpp"

#include <algorithm>

#include "qbc/linalg.hpp"

namespace qbc::detail {

std::vector<ComplexMatrix> effective_ops(const ConnectionChannel& view,
                                         std::span<const ComplexMatrix> states,
                                         std::size_t connection) {
  std::vector<ComplexMatrix> factors;
  for (std::size_t j = 0; j < view.size(); ++j) {
    const auto d = static_cast<Eigen::Index>(view.dims()[j]);
    factors.push_back(j == connection ? ComplexMatrix::Identity(d, d) : states[j]);
  }
  const ComplexMatrix others = kron_all(factors);
  const SystemLayout layout(view.dims());
  const std::size_t keep[] = {connection};
  std::vector<ComplexMatrix> out;
  for (const auto& a : view.kraus()) out.push_back(partial_trace(a * others, layout, keep));
  return out;
}

double quartic(std::span<const ComplexMatrix> ops, const ComplexVector& c) {
  double f = 0.0;
  for (const auto& m : ops) f += std::norm(c.dot(m * c));
  return f;
}

ComplexVector polish(std::span<const ComplexMatrix> ops, ComplexVector c, std::size_t iterations) {
  const Eigen::Index n = c.size();
  const auto k = static_cast<Eigen::Index>(ops.size());
  c.normalize();
  double value = quartic(ops, c);
  double lambda = 1e-3;
  for (std::size_t it = 0; it < iterations && value > 0.0; ++it) {
    // Real Jacobian of (Re r_K, Im r_K) in the coordinates (Re c, Im c).
    Eigen::MatrixXd jac(2 * k, 2 * n);
    Eigen::VectorXd res(2 * k);
    for (Eigen::Index q = 0; q < k; ++q) {
      const auto& m = ops[static_cast<std::size_t>(q)];
      const Complex r = c.dot(m * c);
      const ComplexVector g = m * c - r * c;
      const ComplexVector h = m.adjoint() * c - r * c;
      res(2 * q) = r.real();
      res(2 * q + 1) = r.imag();
      for (Eigen::Index j = 0; j < n; ++j) {
        const Complex re_dir = g(j) + std::conj(h(j));
        const Complex im_dir = Complex(0.0, 1.0) * (std::conj(h(j)) - g(j));
        jac(2 * q, j) = re_dir.real();
        jac(2 * q + 1, j) = re_dir.imag();
        jac(2 * q, n + j) = im_dir.real();
        jac(2 * q + 1, n + j) = im_dir.imag();
      }
    }
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd rhs = -jac.transpose() * res;
    const double scale = std::max(normal.diagonal().maxCoeff(), 1e-300);
    bool accepted = false;
    while (lambda < 1e12) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal().array() += lambda * scale;
      const Eigen::VectorXd step = damped.ldlt().solve(rhs);
      ComplexVector next(n);
      for (Eigen::Index j = 0; j < n; ++j) next(j) = c(j) + Complex(step(j), step(n + j));
      next.normalize();
      const double next_value = quartic(ops, next);
      if (next_value < value) {
        c = next;
        value = next_value;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted) break;
  }
  return c;
}

}  // namespace qbc::detail
