#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace spincorr::kernels {

enum class Backend { Auto, Scalar, Avx2 };

// Auto resolves to Avx2 when the CPU supports it, Scalar otherwise.
// set_backend(Avx2) throws std::runtime_error on machines without AVX2;
// it exists so equivalence tests can pin each path explicitly.
void set_backend(Backend b);
Backend active_backend();
const char* backend_name(Backend b);
bool avx2_supported();

struct Pm1Sums {
  int64_t s1 = 0;
  int64_t s2 = 0;
  int64_t s12 = 0;  // sum of elementwise products
};

// Sums over arrays whose entries are exactly +1 or -1 (int8).
Pm1Sums pm1_sums(const int8_t* s1, const int8_t* s2, size_t n);
Pm1Sums pm1_sums_scalar(const int8_t* s1, const int8_t* s2, size_t n);
Pm1Sums pm1_sums_avx2(const int8_t* s1, const int8_t* s2, size_t n);

// Cumulative category boundaries on the u64 scale: a uniform 64-bit draw u
// falls in category k when #{thresholds <= u} == k. probs must be
// nonnegative and sum to ~1; cumulative sums are clamped into [0, 2^64].
std::array<uint64_t, 3> category_thresholds(const std::array<double, 4>& probs);

// Fills s1/s2 with the +-1 spin pair of each outcome. Outcome k of the run
// is a pure function of (stream_seed, k), so scalar and SIMD lanes agree
// bit-for-bit. Category c maps to (s1, s2) = (c < 2 ? +1 : -1, c & 1 ? -1 : +1).
void sample_outcomes(uint64_t stream_seed, size_t n, const std::array<uint64_t, 3>& thresholds,
                     int8_t* s1, int8_t* s2);
void sample_outcomes_scalar(uint64_t stream_seed, size_t n,
                            const std::array<uint64_t, 3>& thresholds, int8_t* s1, int8_t* s2);
void sample_outcomes_avx2(uint64_t stream_seed, size_t n,
                          const std::array<uint64_t, 3>& thresholds, int8_t* s1, int8_t* s2);

}  // namespace spincorr::kernels
