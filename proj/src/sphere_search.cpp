#include "sphere_search.hpp"

#include <cmath>
#include <limits>

#include "qbc/errors.hpp"
#include "qbc/rng.hpp"

namespace qbc::detail {
namespace {

using Point = std::vector<ComplexVector>;

void normalize(Point& p) {
  for (auto& v : p) {
    const double n = v.norm();
    if (n > 0.0) v /= n;
  }
}

double squared_norm(const Point& p) {
  double s = 0.0;
  for (const auto& v : p) s += v.squaredNorm();
  return s;
}

}  // namespace

SphereSearchResult sphere_search(std::span<const std::size_t> block_dims,
                                 const SphereObjective& objective,
                                 const SphereSearchOptions& options,
                                 const SphereObserver& observer) {
  for (const auto d : block_dims) {
    if (d == 0) throw DimensionError("sphere_search: empty block");
  }
  const double sense = options.maximize ? -1.0 : 1.0;  // internally minimize
  auto f = [&](const Point& p) { return sense * objective(p); };
  const double h = options.finite_difference_step;
  const std::size_t restarts = std::max(options.restarts, options.initial.size());

  SphereSearchResult best;
  best.value = std::numeric_limits<double>::infinity();
  const RandomStream root(options.seed, 0x5EA5C4ull);

  for (std::size_t restart = 0; restart < restarts; ++restart) {
    Point x;
    if (restart < options.initial.size()) {
      x = options.initial[restart];
      if (x.size() != block_dims.size()) throw DimensionError("sphere_search: bad initial point");
      for (std::size_t b = 0; b < x.size(); ++b) {
        if (static_cast<std::size_t>(x[b].size()) != block_dims[b]) {
          throw DimensionError("sphere_search: bad initial point");
        }
      }
    } else {
      RandomStream rng = root.substream(restart);
      for (const auto d : block_dims) {
        ComplexVector v(static_cast<Eigen::Index>(d));
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
        x.push_back(std::move(v));
      }
    }
    normalize(x);
    double fx = f(x);
    if (observer) observer(x, sense * fx, restart);

    double step = 1.0;
    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
      Point grad = x;
      for (std::size_t b = 0; b < x.size(); ++b) {
        for (Eigen::Index i = 0; i < x[b].size(); ++i) {
          const Complex orig = x[b](i);
          double parts[2];
          for (int part = 0; part < 2; ++part) {
            const Complex delta = part == 0 ? Complex(h, 0.0) : Complex(0.0, h);
            Point xp = x;
            xp[b](i) = orig + delta;
            normalize(xp);
            Point xm = x;
            xm[b](i) = orig - delta;
            normalize(xm);
            parts[part] = (f(xp) - f(xm)) / (2.0 * h);
          }
          grad[b](i) = Complex(parts[0], parts[1]);
        }
        // Tangent projection (real inner product on R^{2k}).
        const double radial = x[b].dot(grad[b]).real();
        grad[b] -= radial * x[b];
      }
      const double g2 = squared_norm(grad);
      if (std::sqrt(g2) < options.gradient_tolerance) break;

      step = std::min(4.0, 2.0 * step);
      bool accepted = false;
      while (step > 1e-14) {
        Point trial = x;
        for (std::size_t b = 0; b < x.size(); ++b) trial[b] -= step * grad[b];
        normalize(trial);
        const double ft = f(trial);
        if (ft <= fx - 1e-4 * step * g2) {
          x = std::move(trial);
          fx = ft;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
      if (observer) observer(x, sense * fx, restart);
    }

    if (fx < best.value) {
      best.value = fx;
      best.point = x;
      best.restart = restart;
    }
  }
  best.value *= sense;
  return best;
}

}  // namespace qbc::detail
