#pragma once

#include <cstdint>

namespace mincost {

// Counter-based random stream: every draw is a pure function of
// (seed, stream, counter), so any sample in any run can be replayed
// without generating its predecessors.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), counter_(0) {}

  // Stateless access, usable for sharding.
  static std::uint64_t bits_at(std::uint64_t seed, std::uint64_t stream,
                               std::uint64_t counter);
  static double uniform_at(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter);  // in (0,1)
  static double normal_at(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t counter);   // N(0,1)

  double uniform() { return uniform_at(seed_, stream_, counter_++); }
  double normal() { return normal_at(seed_, stream_, counter_++); }
  std::uint64_t bits() { return bits_at(seed_, stream_, counter_++); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return bits() % n; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
};

}  // namespace mincost
