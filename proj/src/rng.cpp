#include "spincorr/rng.hpp"

#include <algorithm>
#include <cmath>

namespace spincorr {

std::pair<double, double> SplitMix64::next_gaussian_pair() {
  double u1 = next_unit();
  double u2 = next_unit();
  // 1 - u1 is in (0, 1], so the log is finite.
  double r = std::sqrt(-2.0 * std::log1p(-u1));
  double a = 2.0 * M_PI * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

uint64_t sample_binomial(uint64_t n, double p, SplitMix64& rng) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;

  double u = rng.next_unit();
  double nd = static_cast<double>(n);

  uint64_t mode = static_cast<uint64_t>((nd + 1.0) * p);
  mode = std::min(mode, n);

  double log_pm = std::lgamma(nd + 1.0) - std::lgamma(static_cast<double>(mode) + 1.0) -
                  std::lgamma(nd - static_cast<double>(mode) + 1.0) +
                  static_cast<double>(mode) * std::log(p) +
                  (nd - static_cast<double>(mode)) * std::log1p(-p);
  double pm = std::exp(log_pm);

  double acc = pm;
  if (u < acc) return mode;

  // Alternate steps below and above the mode; pmf ratios avoid recomputing
  // lgamma at every k.
  uint64_t kd = mode;
  uint64_t ku = mode;
  double pmf_d = pm;
  double pmf_u = pm;
  bool can_down = mode > 0;
  bool can_up = mode < n;
  while (can_down || can_up) {
    if (can_down) {
      pmf_d *= (static_cast<double>(kd) * (1.0 - p)) /
               ((nd - static_cast<double>(kd) + 1.0) * p);
      --kd;
      acc += pmf_d;
      if (u < acc) return kd;
      can_down = kd > 0;
    }
    if (can_up) {
      pmf_u *= ((nd - static_cast<double>(ku)) * p) /
               ((static_cast<double>(ku) + 1.0) * (1.0 - p));
      ++ku;
      acc += pmf_u;
      if (u < acc) return ku;
      can_up = ku < n;
    }
  }
  // u landed in the sliver of mass lost to rounding; the mode is the safest
  // answer and keeps the draw count at one uniform.
  return mode;
}

std::array<uint64_t, 4> sample_multinomial4(uint64_t n, const std::array<double, 4>& p,
                                            SplitMix64& rng) {
  std::array<uint64_t, 4> out{};
  uint64_t rem = n;
  double prem = 1.0;
  for (int k = 0; k < 3; ++k) {
    if (rem == 0) break;
    double pc = prem > 0.0 ? p[k] / prem : 0.0;
    pc = std::clamp(pc, 0.0, 1.0);
    out[k] = sample_binomial(rem, pc, rng);
    rem -= out[k];
    prem -= p[k];
  }
  out[3] = rem;
  return out;
}

}  // namespace spincorr
