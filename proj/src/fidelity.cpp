#include "qbc/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbc/connection_frame.hpp"
#include "qbc/errors.hpp"
#include "qbc/haar.hpp"
#include "qbc/linalg.hpp"

namespace qbc {
namespace {

std::vector<std::size_t> checked_subset(std::span<const std::size_t> subset, std::size_t size) {
  std::vector<std::size_t> out(subset.begin(), subset.end());
  std::sort(out.begin(), out.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] >= size || (i > 0 && out[i] == out[i - 1])) {
      throw DimensionError("invalid connection subset");
    }
  }
  return out;
}

std::vector<ComplexMatrix> purifications_of(const ConnectionChannel& view,
                                            std::span<const DensityOperator> inputs) {
  if (inputs.size() != view.size()) {
    throw DimensionError(std::to_string(inputs.size()) + " input states for " +
                         std::to_string(view.size()) + " connections");
  }
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].dim() != view.dims()[i]) {
      throw DimensionError("input " + std::to_string(i) + " has dimension " +
                           std::to_string(inputs[i].dim()) + ", connection expects " +
                           std::to_string(view.dims()[i]));
    }
    out.push_back(canonical_purification(inputs[i]));
  }
  return out;
}

std::vector<ComplexMatrix> maximally_entangled_purifications(const ConnectionChannel& view) {
  std::vector<ComplexMatrix> out;
  for (const auto d : view.dims()) {
    const auto n = static_cast<Eigen::Index>(d);
    out.push_back(ComplexMatrix::Identity(n, n) / std::sqrt(static_cast<double>(d)));
  }
  return out;
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& subset, std::size_t size) {
  std::vector<std::size_t> out;
  std::size_t j = 0;
  for (std::size_t i = 0; i < size; ++i) {
    if (j < subset.size() && subset[j] == i) {
      ++j;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace

ConnectionChannel::ConnectionChannel(const KrausChannel& ch, const ConnectionGraph& graph) {
  const ConnectionFrame frame(ch, graph);
  dims_ = frame.dims();
  total_ = frame.total_dim();
  kraus_ = frame.connection_kraus(ch);
}

double ConnectionChannel::pure_state_fidelity(const ComplexVector& product) const {
  if (static_cast<std::size_t>(product.size()) != total_) {
    throw DimensionError("pure_state_fidelity: state dimension mismatch");
  }
  double f = 0.0;
  for (const auto& a : kraus_) f += std::norm(product.dot(a * product));
  return f;
}

double ConnectionChannel::pure_state_fidelity(std::span<const ComplexVector> states) const {
  if (states.size() != dims_.size()) {
    throw DimensionError("pure_state_fidelity: expected one state per connection");
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (static_cast<std::size_t>(states[i].size()) != dims_[i]) {
      throw DimensionError("pure_state_fidelity: state " + std::to_string(i) +
                           " has the wrong dimension");
    }
  }
  return pure_state_fidelity(kron_all(states));
}

double ConnectionChannel::purified_overlap(std::span<const ComplexMatrix> purifications,
                                           std::span<const std::size_t> kept_in) const {
  const std::size_t n = dims_.size();
  if (purifications.size() != n) throw DimensionError("purified_overlap: one purification per connection");
  const auto kept = checked_subset(kept_in, n);

  std::vector<std::size_t> leg_dims(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<std::size_t>(purifications[i].cols()) != dims_[i]) {
      throw DimensionError("purified_overlap: purification " + std::to_string(i) +
                           " has the wrong system dimension");
    }
    leg_dims[i] = static_cast<std::size_t>(purifications[i].rows());
    leg_dims[n + i] = dims_[i];
  }
  const SystemLayout legs(leg_dims);

  // Kept (R_i, B_i) pairs first, then every other leg.
  std::vector<std::size_t> perm;
  std::vector<bool> is_kept(n, false);
  for (const auto i : kept) {
    perm.push_back(i);
    perm.push_back(n + i);
    is_kept[i] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_kept[i]) perm.push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_kept[i]) perm.push_back(n + i);
  }
  const auto index_map = permutation_index_map(legs, perm);

  ComplexVector target = ComplexVector::Ones(1);
  for (const auto i : kept) {
    const auto& p = purifications[i];
    ComplexVector flat(p.size());
    for (Eigen::Index r = 0; r < p.rows(); ++r) {
      for (Eigen::Index a = 0; a < p.cols(); ++a) flat(r * p.cols() + a) = p(r, a);
    }
    target = kron(target, flat);
  }
  const auto kept_dim = static_cast<std::size_t>(target.size());
  const std::size_t rest_dim = legs.total_dim() / kept_dim;

  const ComplexMatrix joint = kron_all(purifications);  // R x D
  const auto d = static_cast<Eigen::Index>(total_);
  ComplexVector permuted(static_cast<Eigen::Index>(legs.total_dim()));
  double f = 0.0;
  for (const auto& a : kraus_) {
    const ComplexMatrix out = joint * a.transpose();  // out(r, b)
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index b = 0; b < d; ++b) {
        permuted(static_cast<Eigen::Index>(index_map[static_cast<std::size_t>(r * d + b)])) = out(r, b);
      }
    }
    for (std::size_t rest = 0; rest < rest_dim; ++rest) {
      Complex w = 0.0;
      for (std::size_t k = 0; k < kept_dim; ++k) {
        w += std::conj(target(static_cast<Eigen::Index>(k))) *
             permuted(static_cast<Eigen::Index>(k * rest_dim + rest));
      }
      f += std::norm(w);
    }
  }
  return f;
}

double ConnectionChannel::swap_trace(std::span<const std::size_t> kept_in) const {
  const std::size_t n = dims_.size();
  const auto kept = checked_subset(kept_in, n);
  std::vector<bool> is_kept(n, false);
  for (const auto i : kept) is_kept[i] = true;

  // Split every basis index into its removed-leg part and kept-leg part.
  std::vector<std::size_t> removed_part(total_), kept_part(total_);
  std::vector<std::size_t> strides(n, 1);
  for (std::size_t i = n; i-- > 1;) strides[i - 1] = strides[i] * dims_[i];
  for (std::size_t idx = 0; idx < total_; ++idx) {
    std::size_t s = 0, k = 0;
    for (std::size_t leg = 0; leg < n; ++leg) {
      const std::size_t contrib = ((idx / strides[leg]) % dims_[leg]) * strides[leg];
      (is_kept[leg] ? k : s) += contrib;
    }
    removed_part[idx] = s;
    kept_part[idx] = k;
  }

  // sum_{a,b} <a|A^dag|a'> <b|A|b'>, a' = (b_removed, a_kept), b' = (a_removed, b_kept).
  double t = 0.0;
  const auto dim = static_cast<Eigen::Index>(total_);
  for (const auto& m : kraus_) {
    Complex acc = 0.0;
    for (Eigen::Index a = 0; a < dim; ++a) {
      for (Eigen::Index b = 0; b < dim; ++b) {
        const auto a_swapped = static_cast<Eigen::Index>(removed_part[b] + kept_part[a]);
        const auto b_swapped = static_cast<Eigen::Index>(removed_part[a] + kept_part[b]);
        acc += std::conj(m(a_swapped, a)) * m(b, b_swapped);
      }
    }
    t += acc.real();
  }
  return t;
}

ComplexMatrix canonical_purification(const DensityOperator& rho) {
  const auto eig = eigh(rho.matrix());
  const RealVector roots = clip_spectrum(eig.values).cwiseSqrt();
  return roots.cast<Complex>().asDiagonal() * eig.vectors.transpose();
}

double group_fidelity(const KrausChannel& ch, std::span<const DensityOperator> inputs,
                      const ConnectionGraph& graph, std::span<const std::size_t> subset) {
  const ConnectionChannel view(ch, graph);
  return view.purified_overlap(purifications_of(view, inputs), subset);
}

double entanglement_fidelity(const KrausChannel& ch, std::span<const DensityOperator> inputs,
                             const ConnectionGraph& graph) {
  std::vector<std::size_t> all(graph.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return group_fidelity(ch, inputs, graph, all);
}

double local_entanglement_fidelity(const KrausChannel& ch, std::span<const DensityOperator> inputs,
                                   const ConnectionGraph& graph, std::size_t connection) {
  const std::size_t subset[] = {connection};
  return group_fidelity(ch, inputs, graph, subset);
}

FidelityReport fidelity_report(const KrausChannel& ch, std::span<const DensityOperator> inputs,
                               const ConnectionGraph& graph) {
  const ConnectionChannel view(ch, graph);
  const std::size_t n = view.size();
  if (n > kMaxSubsetConnections) throw CapacityExceeded("fidelity_report: too many connections");
  const auto purifications = purifications_of(view, inputs);
  FidelityReport report;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) subset.push_back(i);
    }
    report.group_values[subset] = view.purified_overlap(purifications, subset);
  }
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  report.global_value = n == 0 ? 1.0 : report.group_values.at(all);
  for (std::size_t i = 0; i < n; ++i) report.local_values.push_back(report.group_values.at({i}));
  return report;
}

double group_channel_fidelity_kraus(const KrausChannel& ch, const ConnectionGraph& graph,
                                    std::span<const std::size_t> subset) {
  const ConnectionChannel view(ch, graph);
  const auto kept = checked_subset(subset, view.size());
  double removed_dims = 1.0;
  for (const auto j : complement(kept, view.size())) removed_dims *= static_cast<double>(view.dims()[j]);
  const double d = static_cast<double>(view.total_dim());
  return removed_dims / (d * d) * view.swap_trace(kept);
}

double group_channel_fidelity(const KrausChannel& ch, const ConnectionGraph& graph,
                              std::span<const std::size_t> subset, FidelityRoute route) {
  if (route == FidelityRoute::kraus_trace) return group_channel_fidelity_kraus(ch, graph, subset);
  const ConnectionChannel view(ch, graph);
  return view.purified_overlap(maximally_entangled_purifications(view), subset);
}

double channel_fidelity(const KrausChannel& ch, const ConnectionGraph& graph, FidelityRoute route) {
  std::vector<std::size_t> all(graph.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return group_channel_fidelity(ch, graph, all, route);
}

double pure_state_fidelity(const KrausChannel& ch, const ConnectionGraph& graph,
                           std::span<const ComplexVector> states) {
  return ConnectionChannel(ch, graph).pure_state_fidelity(states);
}

MonteCarloEstimate average_fidelity_mc(const KrausChannel& ch, const ConnectionGraph& graph,
                                       std::size_t samples, RandomStream& rng) {
  if (samples < 2) throw DimensionError("average_fidelity_mc: need at least 2 samples");
  const ConnectionChannel view(ch, graph);
  const RandomStream base = rng.substream(rng());
  double sum = 0.0, sum_sq = 0.0;
  std::vector<ComplexVector> states(view.size());
  for (std::size_t s = 0; s < samples; ++s) {
    RandomStream sample_rng = base.substream(s);
    for (std::size_t i = 0; i < view.size(); ++i) states[i] = haar_state(view.dims()[i], sample_rng);
    const double f = view.pure_state_fidelity(kron_all(std::span<const ComplexVector>(states)));
    sum += f;
    sum_sq += f * f;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n), samples};
}

double average_fidelity_exact(const KrausChannel& ch, const ConnectionGraph& graph,
                              FidelityRoute route) {
  const ConnectionChannel view(ch, graph);
  const std::size_t n = view.size();
  if (n > kMaxSubsetConnections) throw CapacityExceeded("average_fidelity_exact: too many connections");
  const auto purifications = maximally_entangled_purifications(view);
  const double d_total = static_cast<double>(view.total_dim());
  double d_plus = 1.0;
  for (const auto d : view.dims()) d_plus *= static_cast<double>(d + 1);

  double sum = 0.0;
  // mask marks the removed connections S; kept = G \ S.
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> kept;
    double coefficient = d_total;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        coefficient /= static_cast<double>(view.dims()[i]);
      } else {
        kept.push_back(i);
      }
    }
    double group;
    if (kept.empty()) {
      group = 1.0;
    } else if (route == FidelityRoute::kraus_trace) {
      double removed_dims = d_total;
      for (const auto i : kept) removed_dims /= static_cast<double>(view.dims()[i]);
      group = removed_dims / (d_total * d_total) * view.swap_trace(kept);
    } else {
      group = view.purified_overlap(purifications, kept);
    }
    sum += coefficient * group;
  }
  return sum / d_plus;
}

}  // namespace qbc
