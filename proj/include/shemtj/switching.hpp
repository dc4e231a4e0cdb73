#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "shemtj/llg.hpp"
#include "shemtj/parallel.hpp"
#include "shemtj/rng.hpp"

namespace shemtj {

struct BinomialInterval {
  double lo = 0.0, hi = 0.0;
};

// Wilson score interval for a binomial proportion (95% by default).
inline BinomialInterval wilson_interval(std::uint64_t successes, std::uint64_t n,
                                        double z = 1.959963984540054) {
  if (n == 0) return {0.0, 1.0};
  const double p = static_cast<double>(successes) / static_cast<double>(n);
  const double nn = static_cast<double>(n);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct PswEstimate {
  double I_q = 0.0;       // [A]
  double p = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;
  std::uint64_t flips = 0;
  std::uint64_t n_trials = 0;
};

struct TrialProtocol {
  PulseTiming timing{};
  double burn_in = 1e-9;  // zero-current thermalization before the pulse [s]
};

// Switching probability at one drive current. Each trial starts in the well
// opposed to the drive direction, thermalizes at zero current, then sees one
// write event. Trials use disjoint rng streams derived from (seed,
// stream_salt, trial), so the estimate is independent of the thread count.
inline PswEstimate estimate_psw(const LlgSystem& sys, double I_q,
                                std::uint64_t n_trials, const TrialProtocol& proto,
                                const IntegratorConfig& cfg, std::uint64_t seed,
                                std::uint64_t stream_salt = substream_id("psw-trial"),
                                unsigned threads = 1) {
  if (n_trials == 0) throw std::invalid_argument("estimate_psw: n_trials must be > 0");
  const Vec3 well = sys.anisotropy().easy_axis * (I_q >= 0 ? -1.0 : 1.0);

  std::atomic<std::uint64_t> flips{0};
  parallel_for(n_trials, threads, [&](std::size_t trial) {
    RngStream rng(seed, stream_salt + trial);
    MagnetizationState s{well, 0.0};
    if (proto.burn_in > 0) s = sys.run_segment(s, 0.0, proto.burn_in, cfg, rng);
    const auto ev = simulate_write_event(sys, s, I_q, proto.timing, cfg, rng);
    if (ev.flipped) flips.fetch_add(1, std::memory_order_relaxed);
  });

  PswEstimate e;
  e.I_q = I_q;
  e.flips = flips.load();
  e.n_trials = n_trials;
  e.p = static_cast<double>(e.flips) / static_cast<double>(n_trials);
  const auto ci = wilson_interval(e.flips, n_trials);
  e.ci_lo = ci.lo;
  e.ci_hi = ci.hi;
  return e;
}

}  // namespace shemtj
