#ifndef BOSEGAS_RNG_HPP
#define BOSEGAS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace bosegas {

// Counter-based splittable stream: (seed, stream) selects an independent
// deterministic sequence, so sample i can always use stream i regardless of
// how work is partitioned across threads.  The generator is the splitmix64
// sequence started from a strong mix of seed and stream.
class SplitStream {
 public:
  SplitStream(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(mix(seed + 0x9e3779b97f4a7c15ull) ^ mix(stream + 0xbf58476d1ce4e5b9ull))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // uniform on (0, 1]
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double next_exponential() { return -std::log(next_uniform()); }

  // uniform on [0, 2*pi)
  double next_phase() {
    return 2.0 * std::numbers::pi * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace bosegas

#endif
