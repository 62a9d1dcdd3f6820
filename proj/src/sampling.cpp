#include "infocomb/sampling.hpp"

#include <cmath>
#include <vector>

#include "infocomb/error.hpp"

namespace infocomb {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return mix64(mix64(mix64(seed) ^ stream) ^ index);
}

double Rng::exponential() { return -std::log1p(-uniform()); }

Channel random_channel(Rng& rng, int max_points) {
  const int m = rng.integer(1, max_points);
  std::vector<MassPoint> pts(static_cast<std::size_t>(m));
  double total = 0.0;
  for (auto& p : pts) {
    p.eps = rng.uniform(0.0, 0.5);
    // Guard against an all-zero draw; exponential() is 0 only when uniform() is.
    p.weight = rng.exponential() + 1e-300;
    total += p.weight;
  }
  for (auto& p : pts) p.weight /= total;
  return Channel::from_points(std::move(pts));
}

Channel random_channel_with(Functional tag, double target, Rng& rng, int max_points) {
  const double top = useless_value(tag);
  if (!(target >= 0.0 && target <= top)) throw DomainError("target functional value out of range");
  const Channel raw = random_channel(rng, max_points);
  const double v = evaluate(tag, raw);
  if (v > target) return mix(raw, bsc(0.0), target / v);
  if (v < target) return mix(raw, bsc(0.5), (top - target) / (top - v));
  return raw;
}

}  // namespace infocomb
