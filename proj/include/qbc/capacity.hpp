#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qbc/channel.hpp"
#include "qbc/density.hpp"

namespace qbc {

// Partition of a layout's legs into A (reference) and B (output) sides.
class BipartiteSplit {
 public:
  BipartiteSplit(SystemLayout layout, std::vector<std::size_t> a_legs,
                 std::vector<std::size_t> b_legs);
  // First `a_count` legs form A, the rest B.
  static BipartiteSplit leading(SystemLayout layout, std::size_t a_count);

  const SystemLayout& layout() const { return layout_; }
  const std::vector<std::size_t>& a_legs() const { return a_; }
  const std::vector<std::size_t>& b_legs() const { return b_; }
  std::size_t a_dim() const;

 private:
  SystemLayout layout_;
  std::vector<std::size_t> a_;
  std::vector<std::size_t> b_;
};

// I_c(A>B) = S(B) - S(AB), bits.
double coherent_information(const DensityOperator& rho, const BipartiteSplit& split);

// I_c before minus I_c after applying `post` to the B legs (in split order).
double check_dpi(const DensityOperator& rho, const BipartiteSplit& split, const KrausChannel& post);

struct ContinuityGap {
  double lhs = 0.0;       // |I_c(rho) - I_c(sigma)|
  double rhs = 0.0;       // 4 sqrt(f) log2(d_A) + 2
  double infidelity = 0.0;
};
ContinuityGap continuity_gap(const DensityOperator& rho, const DensityOperator& sigma,
                             const BipartiteSplit& split);

struct RegionOptions {
  std::size_t restarts = 16;
  std::size_t max_iterations = 300;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kMaxBlocklength = 3;

// One point of the one-way region. Each sender's input is a pure state on
// (x)_{i in its group} A_i (x) (its input legs)^{(x) n}, stored as a
// (reference dim) x (input dim) matrix with reference legs in connection order.
struct RateTuple {
  std::vector<double> weights;
  std::vector<double> rates;                // max(0, I_c / n) per connection
  std::vector<double> coherent_information; // raw I_c / n per connection
  double objective = 0.0;                   // sum_i weights_i * rates_i
  std::size_t blocklength = 1;
  std::size_t restart = 0;
  std::vector<std::size_t> reference_dims;  // per connection, ref_dim^n
  std::vector<ComplexMatrix> purifications; // per sender
};

// Raw per-use coherent informations I_c(A_i > B_i) / n at the given sender states.
std::vector<double> region_rates(const KrausChannel& ch, const ConnectionGraph& graph,
                                 std::size_t n, std::span<const ComplexMatrix> purifications);

RateTuple region_sample(const KrausChannel& ch, const ConnectionGraph& graph, std::size_t n,
                        std::span<const double> weights, const RegionOptions& options = {});

// Scalarizes over every weight vector, then removes dominated and duplicate points.
std::vector<RateTuple> region_pareto(const KrausChannel& ch, const ConnectionGraph& graph,
                                     std::size_t n,
                                     std::span<const std::vector<double>> weight_grid,
                                     const RegionOptions& options = {});

// All weight vectors on the probability simplex with entries in {0, 1/K, ..., 1}.
std::vector<std::vector<double>> simplex_weight_grid(std::size_t connections, std::size_t steps);

}  // namespace qbc
