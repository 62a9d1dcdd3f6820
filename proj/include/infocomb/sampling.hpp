#pragma once

// Seeded random channels. Generator: MT19937-64 (std::mt19937_64, whose
// output sequence is fixed by the C++ standard). Uniform doubles take the
// top 53 bits; exponentials are -log(1 - u). Each trial of a sweep gets its
// own generator seeded from (suite seed, stream, trial index) via SplitMix64,
// so results do not depend on evaluation order.

#include <cstdint>
#include <random>

#include "infocomb/channel.hpp"
#include "infocomb/functionals.hpp"

namespace infocomb {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed for trial `index` of stream `stream` under `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [0, 1).
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) { return lo + int(uniform() * double(hi - lo + 1)); }
  double exponential();
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Raw random channel: 1..max_points mass points, eps uniform on [0, 1/2],
/// weights from normalized independent exponentials.
Channel random_channel(Rng& rng, int max_points = 5);

/// Random channel with functional `tag` equal to `target`: a raw channel of
/// value v is mixed with BSC(0) when v > target and with BSC(1/2) when
/// v < target, which reaches the target exactly by linearity.
Channel random_channel_with(Functional tag, double target, Rng& rng, int max_points = 5);

}  // namespace infocomb
