#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qbc/capacity.hpp"
#include "qbc/errors.hpp"
#include "qbc/linalg.hpp"
#include "sphere_search.hpp"

namespace qbc {
namespace {

// Entropy round-off; smaller rates are reported as zero.
constexpr double kRateNoise = 1e-12;

std::size_t checked_power(std::size_t base, std::size_t n, const char* what) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (out > kMaxDimension / base) {
      throw CapacityExceeded(std::string("region: ") + what + " dimension " + std::to_string(base) +
                             "^" + std::to_string(n) + " exceeds " + std::to_string(kMaxDimension));
    }
    out *= base;
  }
  return out;
}

// Joint pure state on (reference legs, output legs of ch^{(x)n}), with one
// reference leg per connection ordered sender by sender.
class RegionProblem {
 public:
  RegionProblem(const KrausChannel& ch, const ConnectionGraph& graph, std::size_t n)
      : channel_(prepare(ch, graph, n)) {
    const std::size_t conns = graph.size();
    std::vector<std::size_t> ref_leg(conns);
    std::vector<std::size_t> joint_dims;
    for (std::size_t s = 0; s < graph.senders(); ++s) {
      std::size_t ref = 1;
      for (const auto i : graph.sender_group(s)) {
        ref_leg[i] = joint_dims.size();
        joint_dims.push_back(checked_power(graph[i].ref_dim, n, "reference"));
        ref *= joint_dims.back();
      }
      sender_ref_.push_back(ref);
      sender_in_.push_back(channel_.in_layout().party_dim(s));
    }
    for (std::size_t i = 0; i < conns; ++i) ref_dims_.push_back(joint_dims[ref_leg[i]]);
    const auto& out = channel_.out_layout();
    const std::size_t offset = joint_dims.size();
    for (const auto d : out.dims()) joint_dims.push_back(d);
    const SystemLayout joint(joint_dims);
    std::size_t ref_total = 1;
    for (std::size_t l = 0; l < offset; ++l) ref_total *= joint_dims[l];
    if (ref_total > kMaxDimension / channel_.out_dim()) {
      throw CapacityExceeded("region: reference x output dimension " +
                             std::to_string(static_cast<double>(ref_total) *
                                            static_cast<double>(channel_.out_dim())) +
                             " exceeds " + std::to_string(kMaxDimension));
    }

    for (std::size_t i = 0; i < conns; ++i) {
      Marginal m;
      const std::size_t r = graph[i].receiver;
      std::vector<std::size_t> perm{ref_leg[i]};
      for (std::size_t l = out.party_first_leg(r); l < out.party_last_leg(r); ++l) {
        perm.push_back(offset + l);
      }
      m.a_dim = ref_dims_[i];
      m.b_dim = out.party_dim(r);
      for (std::size_t l = 0; l < joint.legs(); ++l) {
        if (std::find(perm.begin(), perm.end(), l) == perm.end()) perm.push_back(l);
      }
      m.index_map = permutation_index_map(joint, perm);
      m.rest_dim = joint.total_dim() / (m.a_dim * m.b_dim);
      marginals_.push_back(std::move(m));
    }
  }

  std::size_t senders() const { return sender_ref_.size(); }
  std::size_t sender_ref(std::size_t s) const { return sender_ref_[s]; }
  std::size_t sender_in(std::size_t s) const { return sender_in_[s]; }
  const std::vector<std::size_t>& ref_dims() const { return ref_dims_; }

  // Raw coherent informations (not divided by n).
  std::vector<double> coherent_informations(std::span<const ComplexMatrix> states) const {
    if (states.size() != senders()) throw DimensionError("region: one state per sender required");
    for (std::size_t s = 0; s < states.size(); ++s) {
      if (static_cast<std::size_t>(states[s].rows()) != sender_ref_[s] ||
          static_cast<std::size_t>(states[s].cols()) != sender_in_[s]) {
        throw DimensionError("region: sender " + std::to_string(s) + " state must be " +
                             std::to_string(sender_ref_[s]) + " x " + std::to_string(sender_in_[s]));
      }
    }
    const ComplexMatrix joint = kron_all(states);
    const double norm = joint.squaredNorm();
    const auto dout = static_cast<Eigen::Index>(channel_.out_dim());

    std::vector<ComplexMatrix> rho;
    std::vector<ComplexMatrix> x;
    for (const auto& m : marginals_) {
      const auto keep = static_cast<Eigen::Index>(m.a_dim * m.b_dim);
      rho.push_back(ComplexMatrix::Zero(keep, keep));
      x.push_back(ComplexMatrix(keep, static_cast<Eigen::Index>(m.rest_dim)));
    }
    for (const auto& a : channel_.kraus()) {
      const ComplexMatrix v = joint * a.transpose();
      for (std::size_t i = 0; i < marginals_.size(); ++i) {
        const auto& m = marginals_[i];
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
          for (Eigen::Index b = 0; b < dout; ++b) {
            const std::size_t idx = m.index_map[static_cast<std::size_t>(r * dout + b)];
            x[i](static_cast<Eigen::Index>(idx / m.rest_dim),
                 static_cast<Eigen::Index>(idx % m.rest_dim)) = v(r, b);
          }
        }
        rho[i].noalias() += x[i] * x[i].adjoint();
      }
    }

    std::vector<double> out;
    for (std::size_t i = 0; i < marginals_.size(); ++i) {
      const auto& m = marginals_[i];
      const ComplexMatrix ab = rho[i] / norm;
      const auto bd = static_cast<Eigen::Index>(m.b_dim);
      ComplexMatrix b = ComplexMatrix::Zero(bd, bd);
      for (std::size_t a = 0; a < m.a_dim; ++a) {
        const auto off = static_cast<Eigen::Index>(a) * bd;
        b += ab.block(off, off, bd, bd);
      }
      out.push_back(spectral_entropy_bits(b) - spectral_entropy_bits(ab));
    }
    return out;
  }

 private:
  struct Marginal {
    std::vector<std::size_t> index_map;
    std::size_t a_dim = 1;
    std::size_t b_dim = 1;
    std::size_t rest_dim = 1;
  };

  static KrausChannel prepare(const KrausChannel& ch, const ConnectionGraph& graph, std::size_t n) {
    if (n == 0) throw DimensionError("region: blocklength must be at least 1");
    if (n > kMaxBlocklength) {
      throw CapacityExceeded("region: blocklength " + std::to_string(n) + " outside 1.." +
                             std::to_string(kMaxBlocklength));
    }
    if (graph.senders() != ch.in_layout().parties() ||
        graph.receivers() != ch.out_layout().parties()) {
      throw DimensionError("region: connection graph has " + std::to_string(graph.senders()) +
                           " senders and " + std::to_string(graph.receivers()) +
                           " receivers, channel has " + std::to_string(ch.in_layout().parties()) +
                           " and " + std::to_string(ch.out_layout().parties()));
    }
    checked_power(ch.in_dim(), n, "input");
    checked_power(ch.out_dim(), n, "output");
    return tensor_power(ch, n);
  }

  KrausChannel channel_;
  std::vector<std::size_t> sender_ref_;
  std::vector<std::size_t> sender_in_;
  std::vector<std::size_t> ref_dims_;
  std::vector<Marginal> marginals_;
};

ComplexMatrix unflatten(const ComplexVector& v, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = v(r * m.cols() + c);
  }
  return m;
}

ComplexVector flatten(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) v(r * m.cols() + c) = m(r, c);
  }
  return v;
}

// n-fold tensor power of a single-letter sender state, with reference and
// input legs regrouped so the copies of each leg are adjacent.
ComplexMatrix state_power(const ComplexMatrix& psi, std::span<const std::size_t> ref_dims,
                          std::span<const std::size_t> in_dims, std::size_t n) {
  ComplexMatrix acc = psi;
  for (std::size_t c = 1; c < n; ++c) acc = kron(acc, psi);
  auto regroup = [n](std::span<const std::size_t> dims) {
    std::vector<std::size_t> flat;
    for (std::size_t c = 0; c < n; ++c) flat.insert(flat.end(), dims.begin(), dims.end());
    std::vector<std::size_t> perm;
    for (std::size_t l = 0; l < dims.size(); ++l) {
      for (std::size_t c = 0; c < n; ++c) perm.push_back(c * dims.size() + l);
    }
    return std::pair{SystemLayout(flat), perm};
  };
  const auto [ref_layout, ref_perm] = regroup(ref_dims);
  const auto [in_layout, in_perm] = regroup(in_dims);
  return permute_legs(acc, ref_layout, ref_perm, in_layout, in_perm);
}

void check_weights(std::span<const double> weights, std::size_t connections) {
  if (weights.size() != connections) {
    throw DimensionError("region: " + std::to_string(weights.size()) + " weights for " +
                         std::to_string(connections) + " connections");
  }
  bool any = false;
  for (const double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw DimensionError("region: weights must be nonnegative");
    any = any || w > 0.0;
  }
  if (!any) throw DimensionError("region: weights must not all be zero");
}

double clamped_objective(std::span<const double> weights, std::span<const double> values) {
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) total += weights[i] * std::max(0.0, values[i]);
  return total;
}

RateTuple optimize(const RegionProblem& problem, std::size_t n, std::span<const double> weights,
                   const RegionOptions& options,
                   const std::vector<std::vector<ComplexVector>>& initial) {
  std::vector<std::size_t> blocks;
  for (std::size_t s = 0; s < problem.senders(); ++s) {
    blocks.push_back(problem.sender_ref(s) * problem.sender_in(s));
  }
  auto states_of = [&](std::span<const ComplexVector> point) {
    std::vector<ComplexMatrix> states;
    for (std::size_t s = 0; s < point.size(); ++s) {
      states.push_back(unflatten(point[s], problem.sender_ref(s), problem.sender_in(s)));
    }
    return states;
  };
  auto objective = [&](std::span<const ComplexVector> point) {
    const auto states = states_of(point);
    const auto values = problem.coherent_informations(states);
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) total += weights[i] * values[i];
    return total;
  };

  // Track the best point by the clamped objective; the raw sum drives the ascent.
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<ComplexVector> best_point;
  std::size_t best_restart = 0;
  auto observer = [&](std::span<const ComplexVector> point, double, std::size_t restart) {
    const auto values = problem.coherent_informations(states_of(point));
    const double value = clamped_objective(weights, values);
    if (value > best_value) {
      best_value = value;
      best_point.assign(point.begin(), point.end());
      best_restart = restart;
    }
  };

  detail::SphereSearchOptions search;
  search.restarts = options.restarts;
  search.max_iterations = options.max_iterations;
  search.seed = options.seed;
  search.maximize = true;
  search.initial = initial;
  detail::sphere_search(blocks, objective, search, observer);

  RateTuple tuple;
  tuple.weights.assign(weights.begin(), weights.end());
  tuple.blocklength = n;
  tuple.restart = best_restart;
  tuple.reference_dims = problem.ref_dims();
  tuple.purifications = states_of(best_point);
  for (auto& p : tuple.purifications) p /= p.norm();
  const auto values = problem.coherent_informations(tuple.purifications);
  for (const double v : values) {
    tuple.coherent_information.push_back(v / static_cast<double>(n));
    const double rate = v / static_cast<double>(n);
    tuple.rates.push_back(rate > kRateNoise ? rate : 0.0);
  }
  tuple.objective = clamped_objective(weights, tuple.rates);
  return tuple;
}

RateTuple sample_with_problem(const KrausChannel& ch, const ConnectionGraph& graph,
                              const RegionProblem& problem, std::size_t n,
                              std::span<const double> weights, const RegionOptions& options) {
  check_weights(weights, graph.size());
  std::vector<std::vector<ComplexVector>> initial;
  if (n > 1) {
    const RegionProblem single(ch, graph, 1);
    const RateTuple base = optimize(single, 1, weights, options, {});
    std::vector<ComplexVector> seed;
    for (std::size_t s = 0; s < graph.senders(); ++s) {
      std::vector<std::size_t> ref_dims;
      for (const auto i : graph.sender_group(s)) ref_dims.push_back(graph[i].ref_dim);
      const auto& in = ch.in_layout();
      std::vector<std::size_t> in_dims(in.dims().begin() + static_cast<std::ptrdiff_t>(in.party_first_leg(s)),
                                       in.dims().begin() + static_cast<std::ptrdiff_t>(in.party_last_leg(s)));
      seed.push_back(flatten(state_power(base.purifications[s], ref_dims, in_dims, n)));
    }
    initial.push_back(std::move(seed));
  }
  return optimize(problem, n, weights, options, initial);
}

bool dominates(const RateTuple& a, const RateTuple& b, double tol) {
  bool strictly = false;
  for (std::size_t i = 0; i < a.rates.size(); ++i) {
    if (a.rates[i] < b.rates[i] - tol) return false;
    if (a.rates[i] > b.rates[i] + tol) strictly = true;
  }
  return strictly;
}

bool same_rates(const RateTuple& a, const RateTuple& b, double tol) {
  for (std::size_t i = 0; i < a.rates.size(); ++i) {
    if (std::abs(a.rates[i] - b.rates[i]) > tol) return false;
  }
  return true;
}

}  // namespace

std::vector<double> region_rates(const KrausChannel& ch, const ConnectionGraph& graph,
                                 std::size_t n, std::span<const ComplexMatrix> purifications) {
  const RegionProblem problem(ch, graph, n);
  auto values = problem.coherent_informations(purifications);
  for (auto& v : values) v /= static_cast<double>(n);
  return values;
}

RateTuple region_sample(const KrausChannel& ch, const ConnectionGraph& graph, std::size_t n,
                        std::span<const double> weights, const RegionOptions& options) {
  const RegionProblem problem(ch, graph, n);
  return sample_with_problem(ch, graph, problem, n, weights, options);
}

std::vector<RateTuple> region_pareto(const KrausChannel& ch, const ConnectionGraph& graph,
                                     std::size_t n,
                                     std::span<const std::vector<double>> weight_grid,
                                     const RegionOptions& options) {
  constexpr double kTieTolerance = 1e-9;
  const RegionProblem problem(ch, graph, n);
  std::vector<RateTuple> points;
  for (const auto& w : weight_grid) {
    points.push_back(sample_with_problem(ch, graph, problem, n, w, options));
  }
  std::vector<RateTuple> frontier;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < points.size() && keep; ++j) {
      if (j != i && dominates(points[j], points[i], kTieTolerance)) keep = false;
    }
    for (const auto& f : frontier) {
      if (keep && same_rates(f, points[i], kTieTolerance)) keep = false;
    }
    if (keep) frontier.push_back(points[i]);
  }
  return frontier;
}

std::vector<std::vector<double>> simplex_weight_grid(std::size_t connections, std::size_t steps) {
  if (connections == 0 || steps == 0) throw DimensionError("weight grid: need connections and steps >= 1");
  std::vector<std::vector<double>> grid;
  std::vector<std::size_t> counts(connections, 0);
  // Enumerate compositions of `steps` into `connections` parts.
  auto recurse = [&](auto&& self, std::size_t index, std::size_t remaining) -> void {
    if (index + 1 == connections) {
      counts[index] = remaining;
      std::vector<double> w;
      for (const auto c : counts) w.push_back(static_cast<double>(c) / static_cast<double>(steps));
      grid.push_back(std::move(w));
      return;
    }
    for (std::size_t c = remaining + 1; c-- > 0;) {
      counts[index] = c;
      self(self, index + 1, remaining - c);
    }
  };
  recurse(recurse, 0, steps);
  return grid;
}

}  // namespace qbc
