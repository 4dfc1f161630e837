#pragma once
// Named, seedable, splittable generator ("splitmix64"). Split streams derive
// from the base seed alone, so results for a fixed (seed, trials) pair do not
// depend on scheduling or worker count. Uniform doubles are built from the
// raw bits directly; no implementation-defined distributions.

#include <cstdint>

namespace naqkit {

inline constexpr const char* kRngName = "splitmix64";

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : base_(seed), state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bernoulli(double p) { return next_unit() < p; }

  // Stream `i` derived from the base seed; independent of consumption state.
  SplitMix64 split(uint64_t i) const {
    SplitMix64 derived(base_ ^ (0xA0761D6478BD642Full * (i + 1)));
    derived.next_u64();  // burn-in decorrelates nearby stream ids
    return derived;
  }

  uint64_t base_seed() const { return base_; }

 private:
  uint64_t base_;
  uint64_t state_;
};

}  // namespace naqkit
