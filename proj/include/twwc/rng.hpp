#pragma once

#include <cstdint>

#include "twwc/pmf.hpp"

namespace twwc {

// Counter-based pseudo-random generator. A (seed, stream) pair keys an
// independent stream; output i is a stateless hash of (key, i), so results
// are identical under any parallel schedule as long as each logical unit of
// work owns its own stream id.
//
// The per-output hash is the SplitMix64 finalizer evaluated at
// key + (counter+1) * golden-gamma, which is exactly the SplitMix64 sequence
// with starting state `key`, indexable at arbitrary positions.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed ^ 0x7f4a7c15u) + mix(stream * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull)) {}

  std::uint64_t next_u64() {
    std::uint64_t z = key_ + (++ctr_) * 0x9e3779b97f4a7c15ull;
    return mix(z);
  }

  // Uniform in [0,1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in {0..n-1} by rejection.
  std::uint64_t next_below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  // Inverse-CDF sample; consumes exactly one draw.
  std::size_t sample(const Pmf& p) {
    double u = next_double();
    double acc = 0.0;
    std::size_t last_pos = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= 0.0) continue;
      acc += p[i];
      last_pos = i;
      if (u < acc) return i;
    }
    return last_pos;  // guard against rounding in the final bucket
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

}  // namespace twwc
