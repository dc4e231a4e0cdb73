#pragma once

#include <cmath>

#include "shemtj/constants.hpp"
#include "shemtj/magnetics.hpp"
#include "shemtj/rng.hpp"
#include "shemtj/vec3.hpp"

namespace shemtj {

// Self-demagnetizing field of the uniform state, H = -Ms N m [A/m].
inline Vec3 demag_field(const Vec3& m, const Vec3& demag, double Ms) {
  return {-Ms * demag.x * m.x, -Ms * demag.y * m.y, -Ms * demag.z * m.z};
}

// Uniaxial anisotropy field H = H_k (m.e) e [A/m].
inline Vec3 anisotropy_field(const Vec3& m, const AnisotropyModel& aniso) {
  return aniso.easy_axis * (aniso.H_k * dot(m, aniso.easy_axis));
}

inline Vec3 deterministic_field(const Vec3& m, const MaterialParams& mat,
                                const AnisotropyModel& aniso) {
  return demag_field(m, aniso.demag, mat.Ms) + anisotropy_field(m, aniso);
}

// Per-component standard deviation of the thermal field for one step of
// length dt [A/m]:  sigma = sqrt( alpha/(1+alpha^2) * 2 kB T / (gamma mu0 Ms V dt) )
inline double thermal_field_sigma(const MaterialParams& mat, double volume, double dt) {
  const double a = mat.alpha / (1.0 + mat.alpha * mat.alpha);
  return std::sqrt(a * 2.0 * constants::k_B * mat.temperature /
                   (constants::gamma_llg * constants::mu_0 * mat.Ms * volume * dt));
}

// One thermal field sample; each component is independent N(0, sigma^2).
inline Vec3 thermal_field(double sigma, RngStream& rng) {
  return {sigma * rng.gaussian(), sigma * rng.gaussian(), sigma * rng.gaussian()};
}

// Spin current entering the free layer from the spin Hall effect [A]:
//   I_s = theta_SH (W_MTJ / t_HM) I_q
inline double spin_hall_gain(double theta_sh, double w_mtj, double t_hm) {
  return theta_sh * w_mtj / t_hm;
}

}  // namespace shemtj
