#pragma once

#include <cstddef>
#include <vector>

#include "qbc/channel.hpp"

namespace qbc {

// Identifies every connection i with one input factor and one output factor
// of dimension d_i. Sender s's input space is read as the tensor product of
// its connections' factors in connection order; receivers likewise. The
// frame reorders operators between that native order and connection order
// (factor i = connection i on both sides).
class ConnectionFrame {
 public:
  // Throws DimensionError if a party's dimension is not the product of its
  // connections' ref_dims.
  ConnectionFrame(const SystemLayout& in, const SystemLayout& out, const ConnectionGraph& graph);
  ConnectionFrame(const KrausChannel& ch, const ConnectionGraph& graph)
      : ConnectionFrame(ch.in_layout(), ch.out_layout(), graph) {}

  std::size_t size() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const { return total_; }
  const SystemLayout& connection_layout() const { return connection_layout_; }

  ComplexMatrix to_connection_order(const ComplexMatrix& native) const;
  ComplexMatrix to_native_order(const ComplexMatrix& connection_ordered) const;
  std::vector<ComplexMatrix> connection_kraus(const KrausChannel& ch) const;

  // Layouts with one leg per connection factor, grouped into the original
  // parties.
  const SystemLayout& native_in() const { return native_in_; }
  const SystemLayout& native_out() const { return native_out_; }

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
  SystemLayout connection_layout_;
  SystemLayout native_in_;
  SystemLayout native_out_;
  std::vector<std::size_t> in_perm_;   // connection j <- native factor in_perm_[j]
  std::vector<std::size_t> out_perm_;
  std::vector<std::size_t> in_inverse_;
  std::vector<std::size_t> out_inverse_;
};

}  // namespace qbc
