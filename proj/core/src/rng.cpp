#include "mincost/rng.hpp"

#include <cmath>

namespace mincost {
namespace {

// SplitMix64 finalizer; full avalanche on the mixed key.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::bits_at(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t counter) {
  return mix(mix(mix(seed) ^ stream) ^ counter);
}

double CounterRng::uniform_at(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t counter) {
  // 53-bit mantissa, shifted into (0,1).
  const std::uint64_t b = bits_at(seed, stream, counter) >> 11;
  return (static_cast<double>(b) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal_at(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t counter) {
  // Box-Muller on two sub-draws of the same counter; each normal consumes
  // one logical counter value.
  const double u1 = uniform_at(seed, stream ^ 0x517cc1b727220a95ull, counter);
  const double u2 = uniform_at(seed, stream ^ 0x2545f4914f6cdd1dull, counter);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace mincost
