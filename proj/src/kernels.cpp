#include "spincorr/kernels.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "spincorr/rng.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define SPINCORR_X86 1
#else
#define SPINCORR_X86 0
#endif

namespace spincorr::kernels {

namespace {
std::atomic<Backend> g_backend{Backend::Auto};

Backend resolve() {
  Backend b = g_backend.load(std::memory_order_relaxed);
  if (b != Backend::Auto) return b;
  return avx2_supported() ? Backend::Avx2 : Backend::Scalar;
}
}  // namespace

bool avx2_supported() {
#if SPINCORR_X86
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_supported())
    throw std::runtime_error("AVX2 backend requested but not supported by this CPU");
  g_backend.store(b, std::memory_order_relaxed);
}

Backend active_backend() { return resolve(); }

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    default: return "auto";
  }
}

Pm1Sums pm1_sums_scalar(const int8_t* s1, const int8_t* s2, size_t n) {
  Pm1Sums out;
  for (size_t k = 0; k < n; ++k) {
    out.s1 += s1[k];
    out.s2 += s2[k];
    out.s12 += static_cast<int>(s1[k]) * static_cast<int>(s2[k]);
  }
  return out;
}

std::array<uint64_t, 3> category_thresholds(const std::array<double, 4>& probs) {
  std::array<uint64_t, 3> t{};
  double cum = 0.0;
  for (int k = 0; k < 3; ++k) {
    cum += std::max(probs[k], 0.0);
    double scaled = cum * 0x1.0p64;
    if (scaled >= 0x1.0p64)
      t[k] = UINT64_MAX;  // saturates; leaks 2^-64 of mass to the next bin
    else if (scaled <= 0.0)
      t[k] = 0;
    else
      t[k] = static_cast<uint64_t>(scaled);
  }
  return t;
}

void sample_outcomes_scalar(uint64_t stream_seed, size_t n,
                            const std::array<uint64_t, 3>& t, int8_t* s1, int8_t* s2) {
  for (size_t k = 0; k < n; ++k) {
    uint64_t u = SplitMix64::at(stream_seed, k);
    int c = (u >= t[0]) + (u >= t[1]) + (u >= t[2]);
    s1[k] = static_cast<int8_t>(c < 2 ? 1 : -1);
    s2[k] = static_cast<int8_t>((c & 1) ? -1 : 1);
  }
}

#if SPINCORR_X86

namespace {

// Low 64 bits of a 64x64 product from 32-bit pieces (no mullo_epi64 in AVX2).
__attribute__((target("avx2"))) inline __m256i mullo64(__m256i a, __m256i b) {
  __m256i bswap = _mm256_shuffle_epi32(b, 0xB1);
  __m256i prodlh = _mm256_mullo_epi32(a, bswap);
  __m256i prodlh2 = _mm256_hadd_epi32(prodlh, _mm256_setzero_si256());
  __m256i prodlh3 = _mm256_shuffle_epi32(prodlh2, 0x73);
  __m256i prodll = _mm256_mul_epu32(a, b);
  return _mm256_add_epi64(prodll, prodlh3);
}

__attribute__((target("avx2"))) inline __m256i mix4(__m256i z) {
  const __m256i c1 = _mm256_set1_epi64x(static_cast<int64_t>(0xBF58476D1CE4E5B9ull));
  const __m256i c2 = _mm256_set1_epi64x(static_cast<int64_t>(0x94D049BB133111EBull));
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 30));
  z = mullo64(z, c1);
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 27));
  z = mullo64(z, c2);
  return _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
}

// Sums the 32 signed bytes of x via the unsigned-bias trick:
// sad(x ^ 0x80, 0) accumulates (x_i + 128); caller subtracts 128 per byte.
__attribute__((target("avx2"))) inline __m256i biased_byte_sums(__m256i x) {
  const __m256i bias = _mm256_set1_epi8(static_cast<char>(0x80));
  return _mm256_sad_epu8(_mm256_xor_si256(x, bias), _mm256_setzero_si256());
}

__attribute__((target("avx2"))) inline int64_t hsum_epi64(__m256i v) {
  alignas(32) int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

}  // namespace

__attribute__((target("avx2"))) Pm1Sums pm1_sums_avx2(const int8_t* s1, const int8_t* s2,
                                                      size_t n) {
  __m256i acc1 = _mm256_setzero_si256();
  __m256i acc2 = _mm256_setzero_si256();
  __m256i acc12 = _mm256_setzero_si256();
  const __m256i two = _mm256_set1_epi8(2);
  const __m256i neg1 = _mm256_set1_epi8(-1);

  size_t k = 0;
  for (; k + 32 <= n; k += 32) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s1 + k));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s2 + k));
    acc1 = _mm256_add_epi64(acc1, biased_byte_sums(a));
    acc2 = _mm256_add_epi64(acc2, biased_byte_sums(b));
    // For +-1 entries the product is +1 iff the bytes are equal.
    __m256i eq = _mm256_cmpeq_epi8(a, b);
    __m256i prod = _mm256_add_epi8(_mm256_and_si256(eq, two), neg1);
    acc12 = _mm256_add_epi64(acc12, biased_byte_sums(prod));
  }

  int64_t processed = static_cast<int64_t>(k);
  Pm1Sums out;
  out.s1 = hsum_epi64(acc1) - 128 * processed;
  out.s2 = hsum_epi64(acc2) - 128 * processed;
  out.s12 = hsum_epi64(acc12) - 128 * processed;

  Pm1Sums tail = pm1_sums_scalar(s1 + k, s2 + k, n - k);
  out.s1 += tail.s1;
  out.s2 += tail.s2;
  out.s12 += tail.s12;
  return out;
}

__attribute__((target("avx2"))) void sample_outcomes_avx2(uint64_t stream_seed, size_t n,
                                                          const std::array<uint64_t, 3>& t,
                                                          int8_t* s1, int8_t* s2) {
  const __m256i sign = _mm256_set1_epi64x(static_cast<int64_t>(0x8000000000000000ull));
  const __m256i t0 = _mm256_xor_si256(_mm256_set1_epi64x(static_cast<int64_t>(t[0])), sign);
  const __m256i t1 = _mm256_xor_si256(_mm256_set1_epi64x(static_cast<int64_t>(t[1])), sign);
  const __m256i t2 = _mm256_xor_si256(_mm256_set1_epi64x(static_cast<int64_t>(t[2])), sign);
  const __m256i step = _mm256_set1_epi64x(static_cast<int64_t>(4 * SplitMix64::kGamma));

  // Lane j of the state holds stream_seed + (k + j + 1) * gamma, matching
  // SplitMix64::at(stream_seed, k + j).
  __m256i state = _mm256_add_epi64(
      _mm256_set1_epi64x(static_cast<int64_t>(stream_seed)),
      _mm256_set_epi64x(static_cast<int64_t>(4 * SplitMix64::kGamma),
                        static_cast<int64_t>(3 * SplitMix64::kGamma),
                        static_cast<int64_t>(2 * SplitMix64::kGamma),
                        static_cast<int64_t>(1 * SplitMix64::kGamma)));

  size_t k = 0;
  alignas(32) int64_t cat[4];
  for (; k + 4 <= n; k += 4) {
    __m256i u = _mm256_xor_si256(mix4(state), sign);
    state = _mm256_add_epi64(state, step);
    // Each mask is -1 where u < threshold; category = 3 + sum of masks.
    __m256i below = _mm256_add_epi64(_mm256_cmpgt_epi64(t0, u),
                                     _mm256_add_epi64(_mm256_cmpgt_epi64(t1, u),
                                                      _mm256_cmpgt_epi64(t2, u)));
    _mm256_store_si256(reinterpret_cast<__m256i*>(cat), below);
    for (int j = 0; j < 4; ++j) {
      int c = 3 + static_cast<int>(cat[j]);
      s1[k + j] = static_cast<int8_t>(c < 2 ? 1 : -1);
      s2[k + j] = static_cast<int8_t>((c & 1) ? -1 : 1);
    }
  }
  if (k < n) sample_outcomes_scalar(stream_seed + k * SplitMix64::kGamma, n - k, t, s1 + k, s2 + k);
}

#else

Pm1Sums pm1_sums_avx2(const int8_t*, const int8_t*, size_t) {
  throw std::runtime_error("AVX2 backend not built on this architecture");
}

void sample_outcomes_avx2(uint64_t, size_t, const std::array<uint64_t, 3>&, int8_t*, int8_t*) {
  throw std::runtime_error("AVX2 backend not built on this architecture");
}

#endif  // SPINCORR_X86

Pm1Sums pm1_sums(const int8_t* s1, const int8_t* s2, size_t n) {
  return resolve() == Backend::Avx2 ? pm1_sums_avx2(s1, s2, n) : pm1_sums_scalar(s1, s2, n);
}

void sample_outcomes(uint64_t stream_seed, size_t n, const std::array<uint64_t, 3>& thresholds,
                     int8_t* s1, int8_t* s2) {
  if (resolve() == Backend::Avx2)
    sample_outcomes_avx2(stream_seed, n, thresholds, s1, s2);
  else
    sample_outcomes_scalar(stream_seed, n, thresholds, s1, s2);
}

}  // namespace spincorr::kernels
