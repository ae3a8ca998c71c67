#include <algorithm>
#include <cmath>

#include "qbc/capacity.hpp"
#include "qbc/errors.hpp"

namespace qbc {

BipartiteSplit::BipartiteSplit(SystemLayout layout, std::vector<std::size_t> a_legs,
                               std::vector<std::size_t> b_legs)
    : layout_(std::move(layout)), a_(std::move(a_legs)), b_(std::move(b_legs)) {
  std::vector<int> seen(layout_.legs(), 0);
  for (const auto* side : {&a_, &b_}) {
    for (const auto leg : *side) {
      if (leg >= layout_.legs()) throw DimensionError("bipartite split: leg index out of range");
      ++seen[leg];
    }
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
    throw DimensionError("bipartite split: A and B legs must be disjoint and cover the layout");
  }
}

BipartiteSplit BipartiteSplit::leading(SystemLayout layout, std::size_t a_count) {
  std::vector<std::size_t> a, b;
  for (std::size_t l = 0; l < layout.legs(); ++l) (l < a_count ? a : b).push_back(l);
  return BipartiteSplit(std::move(layout), std::move(a), std::move(b));
}

std::size_t BipartiteSplit::a_dim() const {
  std::size_t d = 1;
  for (const auto leg : a_) d *= layout_.dim(leg);
  return d;
}

namespace {

void require_layout(const DensityOperator& rho, const BipartiteSplit& split) {
  if (rho.layout().dims() != split.layout().dims()) {
    throw DimensionError("state layout " + rho.layout().describe() + " does not match split layout " +
                         split.layout().describe());
  }
}

}  // namespace

double coherent_information(const DensityOperator& rho, const BipartiteSplit& split) {
  require_layout(rho, split);
  return entropy(rho.reduced(split.b_legs())) - entropy(rho);
}

double check_dpi(const DensityOperator& rho, const BipartiteSplit& split, const KrausChannel& post) {
  require_layout(rho, split);
  const auto& b = split.b_legs();
  if (b.empty()) throw DimensionError("check_dpi: split has no B legs");
  const DensityOperator after = apply_on_legs(post, rho, b);

  const std::size_t first_b = *std::min_element(b.begin(), b.end());
  std::vector<std::size_t> new_a, new_b;
  std::size_t pos = 0;
  for (std::size_t l = 0; l < rho.layout().legs(); ++l) {
    if (std::find(b.begin(), b.end(), l) == b.end()) {
      new_a.push_back(pos++);
    } else if (l == first_b) {
      for (std::size_t o = 0; o < post.out_layout().legs(); ++o) new_b.push_back(pos++);
    }
  }
  const BipartiteSplit after_split(after.layout(), new_a, new_b);
  return coherent_information(rho, split) - coherent_information(after, after_split);
}

ContinuityGap continuity_gap(const DensityOperator& rho, const DensityOperator& sigma,
                             const BipartiteSplit& split) {
  require_layout(rho, split);
  require_layout(sigma, split);
  ContinuityGap gap;
  gap.lhs = std::abs(coherent_information(rho, split) - coherent_information(sigma, split));
  gap.infidelity = std::max(0.0, 1.0 - uhlmann_fidelity(rho, sigma));
  gap.rhs = 4.0 * std::sqrt(gap.infidelity) * std::log2(static_cast<double>(split.a_dim())) + 2.0;
  return gap;
}

}  // namespace qbc
