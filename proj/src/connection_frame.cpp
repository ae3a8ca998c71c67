#include "qbc/connection_frame.hpp"

#include <string>

#include "qbc/errors.hpp"
#include "qbc/linalg.hpp"

namespace qbc {
namespace {

struct Refinement {
  std::vector<std::size_t> order;  // native factor position -> connection
  SystemLayout layout;
};

Refinement refine(const SystemLayout& native, const ConnectionGraph& graph, bool sender_side) {
  const std::size_t parties = sender_side ? graph.senders() : graph.receivers();
  const char* side = sender_side ? "sender" : "receiver";
  if (native.parties() != parties) {
    throw DimensionError(std::string("connection frame: layout has ") +
                         std::to_string(native.parties()) + " " + side + " parties, graph has " +
                         std::to_string(parties));
  }
  Refinement out;
  std::vector<std::size_t> dims, party;
  for (std::size_t p = 0; p < parties; ++p) {
    const auto group = sender_side ? graph.sender_group(p) : graph.receiver_group(p);
    std::size_t product = 1;
    for (const auto i : group) {
      product *= graph[i].ref_dim;
      out.order.push_back(i);
      dims.push_back(graph[i].ref_dim);
      party.push_back(p);
    }
    if (product != native.party_dim(p)) {
      throw DimensionError(std::string("connection frame: ") + side + " " + std::to_string(p) +
                           " has dimension " + std::to_string(native.party_dim(p)) +
                           " but its connections' ref_dims multiply to " +
                           std::to_string(product));
    }
  }
  out.layout = SystemLayout(std::move(dims), std::move(party));
  return out;
}

std::vector<std::size_t> invert(const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) inv[perm[j]] = j;
  return inv;
}

}  // namespace

ConnectionFrame::ConnectionFrame(const SystemLayout& in, const SystemLayout& out,
                                 const ConnectionGraph& graph)
    : dims_(graph.ref_dims()) {
  for (const auto d : dims_) total_ *= d;
  connection_layout_ = SystemLayout(dims_);
  auto in_ref = refine(in, graph, true);
  auto out_ref = refine(out, graph, false);
  native_in_ = std::move(in_ref.layout);
  native_out_ = std::move(out_ref.layout);
  // Connection j sits at native position inverse(order)[j].
  in_inverse_ = std::move(in_ref.order);
  out_inverse_ = std::move(out_ref.order);
  in_perm_ = invert(in_inverse_);
  out_perm_ = invert(out_inverse_);
}

ComplexMatrix ConnectionFrame::to_connection_order(const ComplexMatrix& native) const {
  return permute_legs(native, SystemLayout(native_out_.dims()), out_perm_,
                      SystemLayout(native_in_.dims()), in_perm_);
}

ComplexMatrix ConnectionFrame::to_native_order(const ComplexMatrix& connection_ordered) const {
  return permute_legs(connection_ordered, connection_layout_, out_inverse_, connection_layout_,
                      in_inverse_);
}

std::vector<ComplexMatrix> ConnectionFrame::connection_kraus(const KrausChannel& ch) const {
  if (ch.in_dim() != total_ || ch.out_dim() != total_) {
    throw DimensionError("connection frame: channel dimensions do not match the frame");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(ch.kraus_count());
  for (const auto& a : ch.kraus()) ops.push_back(to_connection_order(a));
  return ops;
}

}  // namespace qbc
