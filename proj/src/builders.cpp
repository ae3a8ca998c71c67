#include "qbc/builders.hpp"

#include <cmath>
#include <string>

#include "qbc/connection_frame.hpp"
#include "qbc/errors.hpp"
#include "qbc/haar.hpp"
#include "qbc/linalg.hpp"

namespace qbc::builders {
namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidChannel(std::string(what) + ": probability " + std::to_string(p) +
                         " outside [0, 1]");
  }
}

}  // namespace

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

KrausChannel identity(const SystemLayout& layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  return KrausChannel({ComplexMatrix::Identity(d, d)}, layout, layout);
}

KrausChannel unitary(const ComplexMatrix& u, const SystemLayout& layout) {
  if (!is_unitary(u, 1e-10)) throw InvalidChannel("unitary channel: matrix is not unitary");
  return KrausChannel({u}, layout, layout);
}

KrausChannel depolarizing(std::size_t d, double p) {
  check_probability(p, "depolarizing");
  if (d == 0) throw DimensionError("depolarizing: dimension must be >= 1");
  const SystemLayout layout({d});
  const auto n = static_cast<Eigen::Index>(d);
  // Heisenberg-Weyl operators X^a Z^b form a unitary 1-design:
  // (1/d^2) sum_ab W rho W^dag = I/d.
  ComplexMatrix shift = ComplexMatrix::Zero(n, n);
  ComplexMatrix clock = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    shift((j + 1) % n, j) = 1.0;
    clock(j, j) = std::polar(1.0, 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n));
  }
  const double d2 = static_cast<double>(d * d);
  std::vector<ComplexMatrix> ops;
  ComplexMatrix xa = ComplexMatrix::Identity(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    ComplexMatrix w = xa;
    for (Eigen::Index b = 0; b < n; ++b) {
      const double weight = (a == 0 && b == 0) ? 1.0 - p + p / d2 : p / d2;
      if (weight > 0.0) ops.push_back(std::sqrt(weight) * w);
      w = w * clock;
    }
    xa = shift * xa;
  }
  return KrausChannel(std::move(ops), layout, layout);
}

KrausChannel dephasing(double p) {
  check_probability(p, "dephasing");
  std::vector<ComplexMatrix> ops;
  if (p < 1.0) ops.push_back(std::sqrt(1.0 - p) * ComplexMatrix::Identity(2, 2));
  if (p > 0.0) ops.push_back(std::sqrt(p) * pauli_z());
  const SystemLayout layout({2});
  return KrausChannel(std::move(ops), layout, layout);
}

KrausChannel product(std::span<const KrausChannel> per_connection, const ConnectionGraph& graph) {
  if (per_connection.size() != graph.size()) {
    throw DimensionError("product: " + std::to_string(per_connection.size()) +
                         " channels for " + std::to_string(graph.size()) + " connections");
  }
  std::vector<std::size_t> in_order, in_dims, in_party;
  for (std::size_t s = 0; s < graph.senders(); ++s) {
    const auto group = graph.sender_group(s);
    if (group.empty()) throw DimensionError("product: sender " + std::to_string(s) + " has no connection");
    for (const auto i : group) {
      if (per_connection[i].in_dim() != graph[i].ref_dim) {
        throw DimensionError("product: channel " + std::to_string(i) + " input dimension " +
                             std::to_string(per_connection[i].in_dim()) + " differs from ref_dim " +
                             std::to_string(graph[i].ref_dim));
      }
      in_order.push_back(i);
      in_dims.push_back(graph[i].ref_dim);
      in_party.push_back(s);
    }
  }
  std::vector<std::size_t> out_order, out_dims, out_party;
  for (std::size_t r = 0; r < graph.receivers(); ++r) {
    const auto group = graph.receiver_group(r);
    if (group.empty()) throw DimensionError("product: receiver " + std::to_string(r) + " has no connection");
    for (const auto i : group) {
      out_order.push_back(i);
      out_dims.push_back(per_connection[i].out_dim());
      out_party.push_back(r);
    }
  }

  // Tensor in connection order, one leg per connection.
  KrausChannel acc({ComplexMatrix::Identity(1, 1)}, SystemLayout(), SystemLayout());
  for (const auto& ch : per_connection) {
    const KrausChannel flat(ch.kraus(), SystemLayout({ch.in_dim()}), SystemLayout({ch.out_dim()}));
    acc = tensor(acc, flat);
  }
  std::vector<ComplexMatrix> ops;
  for (const auto& a : acc.kraus()) {
    ops.push_back(permute_legs(a, acc.out_layout(), out_order, acc.in_layout(), in_order));
  }
  return KrausChannel(std::move(ops), SystemLayout(in_dims, in_party),
                      SystemLayout(out_dims, out_party));
}

KrausChannel random_channel(const SystemLayout& in, const SystemLayout& out, std::size_t env,
                            RandomStream& rng) {
  const std::size_t rows = out.total_dim() * env;
  if (env == 0 || rows < in.total_dim()) {
    throw DimensionError("random_channel: out*env must be at least the input dimension");
  }
  const ComplexMatrix g = ginibre(rows, in.total_dim(), rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  const ComplexMatrix v = qr.householderQ() * ComplexMatrix::Identity(g.rows(), g.cols());
  const auto dout = static_cast<Eigen::Index>(out.total_dim());
  std::vector<ComplexMatrix> ops;
  for (std::size_t e = 0; e < env; ++e) {
    ops.push_back(v.block(static_cast<Eigen::Index>(e) * dout, 0, dout, v.cols()));
  }
  return KrausChannel(std::move(ops), in, out);
}

KrausChannel random_channel_renormalized(const SystemLayout& in, const SystemLayout& out,
                                         std::size_t count, RandomStream& rng) {
  std::vector<ComplexMatrix> ops;
  const auto din = static_cast<Eigen::Index>(in.total_dim());
  ComplexMatrix s = ComplexMatrix::Zero(din, din);
  for (std::size_t k = 0; k < count; ++k) {
    ops.push_back(ginibre(out.total_dim(), in.total_dim(), rng));
    s += ops.back().adjoint() * ops.back();
  }
  const auto eig = eigh(s, 1e-8);
  const RealVector inv_root = eig.values.cwiseSqrt().cwiseInverse();
  const ComplexMatrix t = eig.vectors * inv_root.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  for (auto& a : ops) a = a * t;
  return KrausChannel(std::move(ops), in, out);
}

KrausChannel mixture(const KrausChannel& a, const KrausChannel& b, double w) {
  check_probability(w, "mixture");
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
    throw DimensionError("mixture: channels act on different spaces");
  }
  std::vector<ComplexMatrix> ops;
  if (w < 1.0) {
    for (const auto& x : a.kraus()) ops.push_back(std::sqrt(1.0 - w) * x);
  }
  if (w > 0.0) {
    for (const auto& x : b.kraus()) ops.push_back(std::sqrt(w) * x);
  }
  return KrausChannel(std::move(ops), a.in_layout(), a.out_layout());
}

}  // namespace qbc::builders
