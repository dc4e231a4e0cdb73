#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "shemtj/constants.hpp"
#include "shemtj/demag.hpp"
#include "shemtj/vec3.hpp"

namespace shemtj {

// Free-layer ellipse. The long axis is the in-plane easy axis and lies along x.
struct Geometry {
  double axis_long = 0.0;   // in-plane easy-axis diameter [m]
  double axis_short = 0.0;  // in-plane hard-axis diameter [m]
  double thickness = 0.0;   // free-layer thickness [m]

  double area() const { return 0.25 * 3.14159265358979323846 * axis_long * axis_short; }
  double volume() const { return area() * thickness; }

  void validate() const {
    if (!(axis_long > 0) || !(axis_short > 0) || !(thickness > 0))
      throw std::invalid_argument("geometry: all dimensions must be positive");
  }
};

struct MaterialParams {
  double Ms = 0.0;           // saturation magnetization [A/m]
  double alpha = 0.0;        // Gilbert damping
  double temperature = 0.0;  // [K]

  void validate() const {
    if (!(Ms > 0)) throw std::invalid_argument("material: Ms must be positive");
    if (!(alpha > 0) || !(alpha < 1))
      throw std::invalid_argument("material: alpha must be in (0, 1)");
    if (!(temperature >= 0))
      throw std::invalid_argument("material: temperature must be non-negative");
  }
};

// Number of spins carrying the free-layer moment (one Bohr magneton each).
inline double spin_count(const MaterialParams& mat, const Geometry& geom) {
  return mat.Ms * geom.volume() / constants::mu_B;
}

// Uniaxial easy axis plus the shape (demag) tensor diagonal.
struct AnisotropyModel {
  Vec3 easy_axis{1, 0, 0};  // unit vector, along a coordinate axis
  double H_k = 0.0;         // uniaxial anisotropy field [A/m]
  Vec3 demag{0, 0, 1};      // demag factors, sum to 1

  void validate() const {
    if (std::abs(easy_axis.norm() - 1.0) > 1e-9)
      throw std::invalid_argument("anisotropy: easy axis must be a unit vector");
    if (!(H_k >= 0)) throw std::invalid_argument("anisotropy: H_k must be non-negative");
    auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in01(demag.x) || !in01(demag.y) || !in01(demag.z) ||
        std::abs(demag.x + demag.y + demag.z - 1.0) > 1e-9)
      throw std::invalid_argument("anisotropy: demag factors must lie in [0,1] and sum to 1");
  }
};

// Total magnetic energy of a uniform state [J]:
//   E(m) = mu0 V ( Ms^2/2 sum_i N_i m_i^2 - Ms H_k / 2 (m.e)^2 )
inline double magnetic_energy(const Vec3& m, const MaterialParams& mat,
                              const Geometry& geom, const AnisotropyModel& aniso) {
  const double V = geom.volume();
  const double demag_term = 0.5 * mat.Ms * mat.Ms *
                            (aniso.demag.x * m.x * m.x + aniso.demag.y * m.y * m.y +
                             aniso.demag.z * m.z * m.z);
  const double me = dot(m, aniso.easy_axis);
  const double aniso_term = -0.5 * mat.Ms * aniso.H_k * me * me;
  return constants::mu_0 * V * (demag_term + aniso_term);
}

// Uniaxial field strength that makes the lowest barrier out of the easy-axis
// well equal to barrier_J. The shape tensor already splits the axes, so the
// explicit H_k only has to supply the remainder:
//   H_k = 2 E_B / (mu0 Ms V) - Ms (N_saddle - N_easy)
// with N_saddle the smaller of the two non-easy factors. Throws if the shape
// contribution alone already exceeds the requested barrier.
inline double calibrate_hk(double barrier_J, const MaterialParams& mat,
                           const Geometry& geom, const Vec3& demag,
                           const Vec3& easy_axis) {
  if (!(barrier_J > 0)) throw std::invalid_argument("calibrate_hk: barrier must be positive");
  double n_easy, n_a, n_b;
  if (std::abs(easy_axis.x) > 0.5) {
    n_easy = demag.x;
    n_a = demag.y;
    n_b = demag.z;
  } else if (std::abs(easy_axis.y) > 0.5) {
    n_easy = demag.y;
    n_a = demag.x;
    n_b = demag.z;
  } else {
    n_easy = demag.z;
    n_a = demag.x;
    n_b = demag.y;
  }
  const double n_saddle = std::min(n_a, n_b);
  const double bare = 2.0 * barrier_J / (constants::mu_0 * mat.Ms * geom.volume());
  const double hk = bare - mat.Ms * (n_saddle - n_easy);
  if (!(hk > 0))
    throw std::invalid_argument(
        "calibrate_hk: shape anisotropy alone exceeds the requested barrier (H_k <= 0)");
  return hk;
}

}  // namespace shemtj
