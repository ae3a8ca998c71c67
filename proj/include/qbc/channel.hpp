#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qbc/density.hpp"
#include "qbc/layout.hpp"
#include "qbc/types.hpp"

namespace qbc {

// One sender -> receiver link. ref_dim is the dimension of the quantum
// message carried on it (d_i).
struct Connection {
  std::size_t sender = 0;
  std::size_t receiver = 0;
  std::size_t ref_dim = 1;

  friend bool operator==(const Connection&, const Connection&) = default;
};

class ConnectionGraph {
 public:
  ConnectionGraph() = default;
  ConnectionGraph(std::size_t senders, std::size_t receivers,
                  std::vector<Connection> connections);

  // Connection i links sender i to receiver i with the given dims.
  static ConnectionGraph diagonal(std::span<const std::size_t> dims);

  std::size_t senders() const { return senders_; }
  std::size_t receivers() const { return receivers_; }
  std::size_t size() const { return connections_.size(); }
  const Connection& operator[](std::size_t i) const { return connections_.at(i); }
  const std::vector<Connection>& connections() const { return connections_; }

  // Connections of a sender (G^(j)) or receiver, in connection order.
  std::vector<std::size_t> sender_group(std::size_t sender) const;
  std::vector<std::size_t> receiver_group(std::size_t receiver) const;

  std::vector<std::size_t> ref_dims() const;

  friend bool operator==(const ConnectionGraph&, const ConnectionGraph&) = default;

 private:
  std::size_t senders_ = 0;
  std::size_t receivers_ = 0;
  std::vector<Connection> connections_;
};

// Kraus representation of a (possibly multi-party) channel. Construction
// checks shapes only; completeness is reported by validate() and enforced by
// loaders.
class KrausChannel {
 public:
  KrausChannel(std::vector<ComplexMatrix> kraus, SystemLayout in, SystemLayout out);

  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  std::size_t kraus_count() const { return kraus_.size(); }
  const SystemLayout& in_layout() const { return in_; }
  const SystemLayout& out_layout() const { return out_; }
  std::size_t in_dim() const { return in_.total_dim(); }
  std::size_t out_dim() const { return out_.total_dim(); }

 private:
  std::vector<ComplexMatrix> kraus_;
  SystemLayout in_;
  SystemLayout out_;
};

struct ValidationReport {
  double defect = 0.0;  // max |sum A^dag A - I|
  bool ok = false;
};

ValidationReport validate(const KrausChannel& ch, double tol = kCompletenessTolerance);
// Throws InvalidChannel with the defect in the message when validate fails.
void require_valid(const KrausChannel& ch, double tol = kCompletenessTolerance);

// sum_K A rho A^dag as a raw matrix.
ComplexMatrix apply_raw(const KrausChannel& ch, const ComplexMatrix& rho);
DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho);

// (I_ref (x) ch)(rho); rho's layout must be ref_layout followed by the
// channel's input legs.
DensityOperator apply_with_reference(const KrausChannel& ch, const DensityOperator& rho,
                                     const SystemLayout& ref_layout);
ComplexMatrix apply_with_reference_raw(const KrausChannel& ch, const ComplexMatrix& rho,
                                       std::size_t ref_dim);

// Applies ch to the given legs of rho (in that order). The output layout
// keeps the untouched legs in place and puts the channel's output legs where
// the first acted-on leg was.
DensityOperator apply_on_legs(const KrausChannel& ch, const DensityOperator& rho,
                              std::span<const std::size_t> legs);

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b,
                    std::size_t max_kraus = kMaxKrausCount);
// n copies, legs regrouped so all copies of original leg l are adjacent, and
// each group inherits the party of l.
KrausChannel tensor_power(const KrausChannel& ch, std::size_t n,
                          std::size_t max_kraus = kMaxKrausCount);
// after o before
KrausChannel compose(const KrausChannel& after, const KrausChannel& before,
                     std::size_t max_kraus = kMaxKrausCount);

// Choi matrix sum_K vec(A) vec(A)^dag with vec stacking (out, in) row-major.
ComplexMatrix choi_matrix(const KrausChannel& ch);
// Minimal Kraus set from the Choi eigendecomposition; same map.
KrausChannel canonical_kraus(const KrausChannel& ch);
// Kraus set from the eigendecomposition of a Choi matrix laid out as above.
KrausChannel kraus_from_choi(const ComplexMatrix& choi, const SystemLayout& in,
                             const SystemLayout& out);

}  // namespace qbc
