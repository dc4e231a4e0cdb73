#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace shemtj {

// Stateless splitmix64 finalizer, used for seeding and stream derivation.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Stable id for a named sub-stream, e.g. substream_id("psw-trial", k).
inline constexpr std::uint64_t substream_id(std::string_view name, std::uint64_t index = 0) {
  return mix64(fnv1a64(name) ^ (index * 0x9E3779B97F4A7C15ULL));
}

// xoshiro256++ with splitmix64 seeding. One (seed, stream_id) pair gives one
// independent, reproducible stream; parallel consumers take disjoint stream ids.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) {
    std::uint64_t x = mix64(mix64(seed) ^ mix64(stream_id ^ 0x5851F42D4C957F2DULL));
    for (auto& w : s_) {
      x += 0x9E3779B97F4A7C15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      w = z ^ (z >> 31);
    }
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased integer in [0, n).
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t threshold = (-n) % n;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Standard normal via the 128-layer ziggurat.
  double gaussian() {
    for (;;) {
      const std::uint64_t u = next_u64();
      const int iz = static_cast<int>(u & 127u);
      const auto hz = static_cast<std::int32_t>(static_cast<std::uint32_t>(u >> 8));
      const std::uint64_t mag = hz < 0 ? -static_cast<std::int64_t>(hz) : hz;
      const auto& t = tables();
      if (mag < t.kn[iz]) return hz * t.wn[iz];

      if (iz == 0) {
        // tail beyond x = R: Marsaglia's exponential wrap
        double x, y;
        do {
          x = -std::log(open_uniform()) * (1.0 / kR);
          y = -std::log(open_uniform());
        } while (y + y < x * x);
        return hz > 0 ? kR + x : -(kR + x);
      }
      const double x = hz * t.wn[iz];
      if (t.fn[iz] + uniform() * (t.fn[iz - 1] - t.fn[iz]) < std::exp(-0.5 * x * x)) return x;
    }
  }

 private:
  static constexpr double kR = 3.442619855899;  // ziggurat edge

  struct Tables {
    std::uint32_t kn[128];
    double wn[128];
    double fn[128];
    Tables() {
      const double m1 = 2147483648.0;
      const double vn = 9.91256303526217e-3;
      double dn = kR, tn = kR;
      double q = vn / std::exp(-0.5 * dn * dn);
      kn[0] = static_cast<std::uint32_t>((dn / q) * m1);
      kn[1] = 0;
      wn[0] = q / m1;
      wn[127] = dn / m1;
      fn[0] = 1.0;
      fn[127] = std::exp(-0.5 * dn * dn);
      for (int i = 126; i >= 1; i--) {
        dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
        kn[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
        tn = dn;
        fn[i] = std::exp(-0.5 * dn * dn);
        wn[i] = dn / m1;
      }
    }
  };

  static const Tables& tables() {
    static const Tables t;
    return t;
  }

  // Uniform in (0, 1]; safe under log().
  double open_uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
};

}  // namespace shemtj
