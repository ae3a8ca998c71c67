#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>

#include "qbc/types.hpp"

namespace qbc {

// Counter-based generator (Philox4x32-10). A stream is identified by a
// 64-bit key; its output is a pure function of (key, counter), so
// substreams can be handed to independent tasks and the result does not
// depend on the order in which they run.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  // Independent child stream; deterministic in (parent key, index).
  RandomStream substream(std::uint64_t index) const;

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  double uniform();  // [0, 1)
  double normal();
  // Circularly symmetric complex Gaussian with E|z|^2 = 1.
  Complex complex_normal();

  std::uint64_t key() const { return key_; }

 private:
  void refill();

  std::uint64_t key_;
  std::array<std::uint32_t, 4> counter_{};
  std::array<std::uint32_t, 4> block_{};
  int consumed_ = 4;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace qbc
