#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace wns {

// Counter-based generator: output i of stream s under a given seed is a pure
// function of (seed, s, i).  Replicates drawn from distinct streams are
// therefore independent of evaluation order, which is what makes sampled
// artifacts reproducible row by row.
//
// Construction: a SplitMix64 sequence whose state is jumped directly to the
// requested index (state_i = base + i * golden gamma, output = finalizer).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : base_(fin(fin(seed + kGamma) ^ fin(stream * 0xd1b54a32d192ed03ULL + 1))) {}

  std::uint64_t next_u64() { return fin(base_ + ++i_ * kGamma); }

  // uniform on (0, 1), 53-bit resolution
  double uniform() {
    const double u = (next_u64() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  // standard normal, Box-Muller (pairs cached)
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t fin(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t base_;
  std::uint64_t i_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace wns
