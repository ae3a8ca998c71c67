#include "qbc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbc/errors.hpp"
#include "qbc/linalg.hpp"

namespace qbc {

ConnectionGraph::ConnectionGraph(std::size_t senders, std::size_t receivers,
                                 std::vector<Connection> connections)
    : senders_(senders), receivers_(receivers), connections_(std::move(connections)) {
  for (std::size_t i = 0; i < connections_.size(); ++i) {
    const auto& c = connections_[i];
    if (c.sender >= senders_ || c.receiver >= receivers_) {
      throw DimensionError("connection " + std::to_string(i) + " refers to sender " +
                           std::to_string(c.sender) + ", receiver " +
                           std::to_string(c.receiver) + " outside " +
                           std::to_string(senders_) + "x" + std::to_string(receivers_));
    }
    if (c.ref_dim == 0) {
      throw DimensionError("connection " + std::to_string(i) + " has ref_dim 0");
    }
  }
}

ConnectionGraph ConnectionGraph::diagonal(std::span<const std::size_t> dims) {
  std::vector<Connection> conns;
  for (std::size_t i = 0; i < dims.size(); ++i) conns.push_back({i, i, dims[i]});
  return ConnectionGraph(dims.size(), dims.size(), std::move(conns));
}

std::vector<std::size_t> ConnectionGraph::sender_group(std::size_t sender) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < connections_.size(); ++i) {
    if (connections_[i].sender == sender) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> ConnectionGraph::receiver_group(std::size_t receiver) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < connections_.size(); ++i) {
    if (connections_[i].receiver == receiver) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> ConnectionGraph::ref_dims() const {
  std::vector<std::size_t> out;
  for (const auto& c : connections_) out.push_back(c.ref_dim);
  return out;
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus, SystemLayout in, SystemLayout out)
    : kraus_(std::move(kraus)), in_(std::move(in)), out_(std::move(out)) {
  if (kraus_.empty()) throw InvalidChannel("channel: empty Kraus set");
  if (kraus_.size() > kMaxKrausCount) {
    throw CapacityExceeded("channel: Kraus count " + std::to_string(kraus_.size()) +
                           " exceeds " + std::to_string(kMaxKrausCount));
  }
  for (std::size_t k = 0; k < kraus_.size(); ++k) {
    const auto& a = kraus_[k];
    if (static_cast<std::size_t>(a.rows()) != out_.total_dim() ||
        static_cast<std::size_t>(a.cols()) != in_.total_dim()) {
      throw DimensionError("channel: Kraus operator " + std::to_string(k) + " is " +
                           std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                           ", expected " + std::to_string(out_.total_dim()) + "x" +
                           std::to_string(in_.total_dim()));
    }
    if (!a.allFinite()) throw InvalidChannel("channel: non-finite Kraus entry");
  }
}

ValidationReport validate(const KrausChannel& ch, double tol) {
  const auto n = static_cast<Eigen::Index>(ch.in_dim());
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& a : ch.kraus()) sum.noalias() += a.adjoint() * a;
  const double defect = max_abs(sum - ComplexMatrix::Identity(n, n));
  return {defect, defect <= tol};
}

void require_valid(const KrausChannel& ch, double tol) {
  const auto report = validate(ch, tol);
  if (!report.ok) {
    throw InvalidChannel("channel is not trace preserving: completeness defect " +
                         std::to_string(report.defect));
  }
}

ComplexMatrix apply_raw(const KrausChannel& ch, const ComplexMatrix& rho) {
  if (static_cast<std::size_t>(rho.rows()) != ch.in_dim() || rho.rows() != rho.cols()) {
    throw DimensionError("apply: state dimension " + std::to_string(rho.rows()) +
                         " differs from channel input " + std::to_string(ch.in_dim()));
  }
  const auto d = static_cast<Eigen::Index>(ch.out_dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& a : ch.kraus()) out.noalias() += a * rho * a.adjoint();
  return out;
}

namespace {

// Output states of a channel that is only complete to `defect` carry a trace
// error of the same order.
double output_tolerance(const KrausChannel& ch) {
  return std::max(kStateTolerance, 10.0 * validate(ch).defect);
}

}  // namespace

DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho) {
  return DensityOperator(apply_raw(ch, rho.matrix()), ch.out_layout(), output_tolerance(ch));
}

ComplexMatrix apply_with_reference_raw(const KrausChannel& ch, const ComplexMatrix& rho,
                                       std::size_t ref_dim) {
  const auto di = static_cast<Eigen::Index>(ch.in_dim());
  const auto dout = static_cast<Eigen::Index>(ch.out_dim());
  const auto r = static_cast<Eigen::Index>(ref_dim);
  if (rho.rows() != r * di || rho.cols() != r * di) {
    throw DimensionError("apply_with_reference: state dimension " + std::to_string(rho.rows()) +
                         " differs from ref " + std::to_string(ref_dim) + " x input " +
                         std::to_string(ch.in_dim()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(r * dout, r * dout);
  for (Eigen::Index a = 0; a < r; ++a) {
    for (Eigen::Index b = 0; b < r; ++b) {
      const auto block = rho.block(a * di, b * di, di, di);
      auto target = out.block(a * dout, b * dout, dout, dout);
      for (const auto& k : ch.kraus()) target.noalias() += k * block * k.adjoint();
    }
  }
  return out;
}

DensityOperator apply_with_reference(const KrausChannel& ch, const DensityOperator& rho,
                                     const SystemLayout& ref_layout) {
  const auto& layout = rho.layout();
  bool matches = layout.legs() == ref_layout.legs() + ch.in_layout().legs();
  for (std::size_t i = 0; matches && i < layout.legs(); ++i) {
    const std::size_t expected = i < ref_layout.legs()
                                     ? ref_layout.dim(i)
                                     : ch.in_layout().dim(i - ref_layout.legs());
    matches = layout.dim(i) == expected;
  }
  if (!matches) {
    throw DimensionError("apply_with_reference: state layout " + layout.describe() +
                         " is not ref " + ref_layout.describe() + " followed by input " +
                         ch.in_layout().describe());
  }
  return DensityOperator(apply_with_reference_raw(ch, rho.matrix(), ref_layout.total_dim()),
                         ref_layout.concat(ch.out_layout()), output_tolerance(ch));
}

DensityOperator apply_on_legs(const KrausChannel& ch, const DensityOperator& rho,
                              std::span<const std::size_t> legs) {
  const auto& layout = rho.layout();
  std::vector<bool> acted(layout.legs(), false);
  std::size_t acted_dim = 1;
  for (const auto leg : legs) {
    if (leg >= layout.legs() || acted[leg]) {
      throw DimensionError("apply_on_legs: invalid or repeated leg index");
    }
    acted[leg] = true;
    acted_dim *= layout.dim(leg);
  }
  if (acted_dim != ch.in_dim()) {
    throw DimensionError("apply_on_legs: legs have dimension " + std::to_string(acted_dim) +
                         ", channel expects " + std::to_string(ch.in_dim()));
  }
  std::vector<std::size_t> rest;
  for (std::size_t l = 0; l < layout.legs(); ++l) {
    if (!acted[l]) rest.push_back(l);
  }
  std::vector<std::size_t> perm = rest;
  perm.insert(perm.end(), legs.begin(), legs.end());
  const ComplexMatrix moved = permute_legs(rho.matrix(), layout, perm);
  const SystemLayout ref_layout = layout.select(rest);
  const ComplexMatrix applied =
      apply_with_reference_raw(ch, moved, ref_layout.total_dim());

  // Current legs: rest..., channel outputs...; restore the original order.
  std::vector<std::size_t> dims = ref_layout.dims();
  for (const auto d : ch.out_layout().dims()) dims.push_back(d);
  const SystemLayout current(dims);
  std::vector<std::size_t> back;
  const std::size_t first_acted = *std::min_element(legs.begin(), legs.end());
  std::size_t rest_pos = 0;
  for (std::size_t l = 0; l < layout.legs(); ++l) {
    if (!acted[l]) {
      back.push_back(rest_pos++);
    } else if (l == first_acted) {
      for (std::size_t o = 0; o < ch.out_layout().legs(); ++o) back.push_back(rest.size() + o);
    }
  }
  std::vector<std::size_t> final_dims;
  for (const auto b : back) final_dims.push_back(dims[b]);
  return DensityOperator(permute_legs(applied, current, back), SystemLayout(final_dims),
                         output_tolerance(ch));
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b, std::size_t max_kraus) {
  if (a.kraus_count() > max_kraus / b.kraus_count()) {
    throw CapacityExceeded("tensor: Kraus count " +
                           std::to_string(a.kraus_count() * b.kraus_count()) + " exceeds " +
                           std::to_string(max_kraus));
  }
  SystemLayout in = a.in_layout().concat(b.in_layout());
  SystemLayout out = a.out_layout().concat(b.out_layout());
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.kraus_count() * b.kraus_count());
  for (const auto& x : a.kraus()) {
    for (const auto& y : b.kraus()) ops.push_back(kron(x, y));
  }
  return KrausChannel(std::move(ops), std::move(in), std::move(out));
}

namespace {

// Regroups n concatenated copies of `base` so copies of each leg are
// adjacent. Returns (permutation, regrouped layout).
std::pair<std::vector<std::size_t>, SystemLayout> grouped_copies(const SystemLayout& base,
                                                                 std::size_t n) {
  std::vector<std::size_t> perm;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> parties;
  for (std::size_t l = 0; l < base.legs(); ++l) {
    for (std::size_t c = 0; c < n; ++c) {
      perm.push_back(c * base.legs() + l);
      dims.push_back(base.dim(l));
      parties.push_back(base.party_of(l));
    }
  }
  return {std::move(perm), SystemLayout(std::move(dims), std::move(parties))};
}

}  // namespace

KrausChannel tensor_power(const KrausChannel& ch, std::size_t n, std::size_t max_kraus) {
  if (n == 0) throw DimensionError("tensor_power: n must be >= 1");
  if (n == 1) return ch;
  double count = std::pow(static_cast<double>(ch.kraus_count()), static_cast<double>(n));
  if (count > static_cast<double>(max_kraus)) {
    throw CapacityExceeded("tensor_power: Kraus count " + std::to_string(count) +
                           " exceeds " + std::to_string(max_kraus));
  }
  KrausChannel acc = ch;
  for (std::size_t i = 1; i < n; ++i) acc = tensor(acc, ch, max_kraus);

  auto [in_perm, in_layout] = grouped_copies(ch.in_layout(), n);
  auto [out_perm, out_layout] = grouped_copies(ch.out_layout(), n);
  // Flat layouts (one party per leg) for the permutation itself.
  const SystemLayout flat_in(acc.in_layout().dims());
  const SystemLayout flat_out(acc.out_layout().dims());
  std::vector<ComplexMatrix> ops;
  ops.reserve(acc.kraus_count());
  for (const auto& a : acc.kraus()) {
    ops.push_back(permute_legs(a, flat_out, out_perm, flat_in, in_perm));
  }
  return KrausChannel(std::move(ops), std::move(in_layout), std::move(out_layout));
}

KrausChannel compose(const KrausChannel& after, const KrausChannel& before,
                     std::size_t max_kraus) {
  if (after.in_dim() != before.out_dim()) {
    throw DimensionError("compose: input dimension " + std::to_string(after.in_dim()) +
                         " of the outer channel differs from output dimension " +
                         std::to_string(before.out_dim()) + " of the inner channel");
  }
  if (after.kraus_count() > max_kraus / before.kraus_count()) {
    throw CapacityExceeded("compose: Kraus count exceeds " + std::to_string(max_kraus));
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(after.kraus_count() * before.kraus_count());
  for (const auto& b : after.kraus()) {
    for (const auto& a : before.kraus()) ops.push_back(b * a);
  }
  return KrausChannel(std::move(ops), before.in_layout(), after.out_layout());
}

ComplexMatrix choi_matrix(const KrausChannel& ch) {
  const auto din = static_cast<Eigen::Index>(ch.in_dim());
  const auto dout = static_cast<Eigen::Index>(ch.out_dim());
  if (static_cast<std::size_t>(din * dout) > kMaxDimension) {
    throw CapacityExceeded("choi_matrix: dimension exceeds " + std::to_string(kMaxDimension));
  }
  ComplexMatrix j = ComplexMatrix::Zero(din * dout, din * dout);
  ComplexVector v(din * dout);
  for (const auto& a : ch.kraus()) {
    for (Eigen::Index r = 0; r < dout; ++r) {
      for (Eigen::Index c = 0; c < din; ++c) v(r * din + c) = a(r, c);
    }
    j.noalias() += v * v.adjoint();
  }
  return j;
}

KrausChannel kraus_from_choi(const ComplexMatrix& choi, const SystemLayout& in,
                             const SystemLayout& out) {
  const auto din = static_cast<Eigen::Index>(in.total_dim());
  const auto dout = static_cast<Eigen::Index>(out.total_dim());
  if (choi.rows() != din * dout || choi.cols() != din * dout) {
    throw DimensionError("kraus_from_choi: Choi matrix must be " + std::to_string(din * dout) +
                         " x " + std::to_string(din * dout));
  }
  const auto eig = eigh(choi, 1e-9);
  const double cutoff = 1e-13 * std::max(1.0, eig.values.maxCoeff());
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index k = eig.values.size(); k-- > 0;) {
    const double lambda = eig.values(k);
    if (lambda <= cutoff) break;
    ComplexMatrix a(dout, din);
    const double scale = std::sqrt(lambda);
    for (Eigen::Index r = 0; r < dout; ++r) {
      for (Eigen::Index c = 0; c < din; ++c) a(r, c) = scale * eig.vectors(r * din + c, k);
    }
    ops.push_back(std::move(a));
  }
  if (ops.empty()) throw InvalidChannel("kraus_from_choi: channel is zero");
  return KrausChannel(std::move(ops), in, out);
}

KrausChannel canonical_kraus(const KrausChannel& ch) {
  return kraus_from_choi(choi_matrix(ch), ch.in_layout(), ch.out_layout());
}

}  // namespace qbc
