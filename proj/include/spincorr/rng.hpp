#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace spincorr {

// SplitMix64. Chosen because the output for index k is a pure function of
// (seed, k), which lets SIMD code evaluate lanes out of order and still
// produce the exact byte stream of the sequential generator.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  // Finalizer from the reference implementation.
  static constexpr uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // k-th output of the stream started at `seed`, without advancing anything.
  // at(seed, k) == the (k+1)-th call to next() on a fresh SplitMix64(seed).
  static constexpr uint64_t at(uint64_t seed, uint64_t k) {
    return mix(seed + (k + 1) * kGamma);
  }

  uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Box-Muller. Both values are always consumed; no hidden cache, so the
  // draw count per call is fixed and streams stay reproducible.
  std::pair<double, double> next_gaussian_pair();

  uint64_t state() const { return state_; }

 private:
  uint64_t state_;
};

// Decorrelated seed for substream `stream_id` of `master`. Used to give each
// measurement table (and the bootstrap) its own independent stream.
constexpr uint64_t derive_stream_seed(uint64_t master, uint64_t stream_id) {
  return SplitMix64::mix(master ^ ((stream_id + 1) * SplitMix64::kGamma));
}

// Binomial(n, p) by inversion, walking outward from the mode so the expected
// number of pmf evaluations is O(sqrt(n p (1-p))) rather than O(n p).
// Consumes exactly one uniform per call.
uint64_t sample_binomial(uint64_t n, double p, SplitMix64& rng);

// Multinomial over four categories via the conditional-binomial chain.
std::array<uint64_t, 4> sample_multinomial4(uint64_t n, const std::array<double, 4>& p,
                                            SplitMix64& rng);

}  // namespace spincorr
