#pragma once

#include <cmath>
#include <stdexcept>

#include "shemtj/vec3.hpp"

namespace shemtj {

namespace detail {

// Epsilon-series for the magnetometric factors of an elliptic cylinder.
// beta = width/length <= 1, zeta = thickness/width, K and E are the complete
// elliptic integrals for modulus 1/sqrt(1+zeta^2). Returns both in-plane
// series; the caller closes the sum with Ny = 1 - Nx - Nz.
struct EllipticCylinderSeries {
  double nz, nx;
};

inline EllipticCylinderSeries elliptic_cylinder_series(double beta, double zeta,
                                                       double K, double E) {
  constexpr double pi = 3.14159265358979323846;
  const double z2 = zeta * zeta;
  const double z4 = z2 * z2;
  const double z6 = z4 * z2;
  const double kz = 1.0 / std::sqrt(1.0 + z2);
  const double kz3 = kz * kz * kz;
  const double kz5 = kz3 * kz * kz;
  const double eps2 = 1.0 - beta * beta;

  const double u0 = 1 + 4 * (1 - ((1 - z2) * E + z2 * K) / kz) / (3 * pi * zeta);
  const double u1 = (1 - ((1 + 2 * z2) * E - 2 * z2 * K) / kz) / (3 * pi * zeta);
  const double u2 = 3 * (1 - (E - kz * kz * z2 * K) / kz) / (16 * pi * zeta);
  const double u3 = 5 * (5 - kz * ((5 + 4 * z2) * E - 4 * z2 * K)) / (192 * pi * zeta);
  const double u4 = 35 *
                    (35 - kz3 * ((5 + 3 * z2) * (7 + 8 * z2) * E -
                                 z2 * (25 + 24 * z2) * K)) /
                    (12288 * pi * zeta);
  const double u5 = 21 *
                    (315 - kz5 * ((315 + 857 * z2 + 742 * z4 + 196 * z6) * E -
                                  2 * z2 * (105 + 203 * z2 + 96 * z4) * K)) /
                    (81920 * pi * zeta);

  const double v0 = -2 * (1 - ((1 - z2) * E + z2 * K) / kz) / (3 * pi * zeta);
  const double v1 = -(1 - ((1 + 8 * z2) * E - 8 * z2 * K) / kz) / (12 * pi * zeta);
  const double v2 = -(1 - (E - 5 * kz * kz * z2 * K) / kz) / (32 * pi * zeta);
  const double v3 = -5 * (5 - kz * ((5 - 2 * z2) * E - 22 * z2 * K)) / (1536 * pi * zeta);
  const double v4 = -7 *
                    (35 - kz3 * ((35 - 3 * z2 - 56 * z4) * E -
                                 z2 * (145 + 136 * z2) * K)) /
                    (24576 * pi * zeta);
  const double v5 = -7 *
                    (315 - kz5 * ((315 + 147 * z2 - 928 * z4 - 848 * z6) * E -
                                  4 * z2 * (315 + 594 * z2 + 268 * z4) * K)) /
                    (327680 * pi * zeta);

  EllipticCylinderSeries s{};
  s.nz = u0 + eps2 * (u1 + eps2 * (u2 + eps2 * (u3 + eps2 * (u4 + eps2 * u5))));
  s.nx = v0 + eps2 * (v1 + eps2 * (v2 + eps2 * (v3 + eps2 * (v4 + eps2 * v5))));
  return s;
}

}  // namespace detail

// Magnetometric demagnetizing factors of an elliptic cylinder (free layer).
// axis_a and axis_b are the full in-plane diameters, thickness the height.
// Returns (N along axis_a, N along axis_b, N out of plane); the components
// sum to 1 by construction.
inline Vec3 demag_factors_elliptic_cylinder(double axis_a, double axis_b,
                                            double thickness) {
  if (!(axis_a > 0) || !(axis_b > 0) || !(thickness > 0))
    throw std::invalid_argument("demag factors: dimensions must be positive");

  const bool swapped = axis_a < axis_b;
  const double length = swapped ? axis_b : axis_a;
  const double width = swapped ? axis_a : axis_b;

  const double beta = width / length;
  const double zeta = thickness / width;
  const double modulus = 1.0 / std::sqrt(1.0 + zeta * zeta);
  const double K = std::comp_ellint_1(modulus);
  const double E = std::comp_ellint_2(modulus);

  const auto s = detail::elliptic_cylinder_series(beta, zeta, K, E);
  const double n_long = s.nx;
  const double n_z = s.nz;
  const double n_short = 1.0 - n_long - n_z;

  Vec3 n = swapped ? Vec3{n_short, n_long, n_z} : Vec3{n_long, n_short, n_z};
  if (n.x < 0 || n.y < 0 || n.z < 0 || n.x > 1 || n.y > 1 || n.z > 1)
    throw std::domain_error("demag factors: series left [0,1], geometry out of range");
  return n;
}

}  // namespace shemtj
