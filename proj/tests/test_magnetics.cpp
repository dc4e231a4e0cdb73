#include "catch_amalgamated.hpp"

#include <cmath>

#include "shemtj/constants.hpp"
#include "shemtj/fields.hpp"
#include "shemtj/magnetics.hpp"

using namespace shemtj;

namespace {
Geometry ref_geom() { return {112.5e-9, 45e-9, 1.5e-9}; }
MaterialParams ref_mat() { return {1.2573e6, 0.1, 300.0}; }
Vec3 ref_demag() { return {0.01635726, 0.05499853, 0.92864421}; }
}  // namespace

TEST_CASE("geometry area and volume") {
  const Geometry g = ref_geom();
  // quarter-pi ellipse area
  CHECK(g.area() == Catch::Approx(M_PI / 4 * 112.5e-9 * 45e-9).epsilon(1e-12));
  CHECK(g.volume() == Catch::Approx(5.96411730e-24).epsilon(1e-8));
  CHECK_THROWS_AS((Geometry{0, 45e-9, 1.5e-9}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Geometry{45e-9, 45e-9, -1e-9}.validate()), std::invalid_argument);
}

TEST_CASE("material validation") {
  CHECK_NOTHROW(ref_mat().validate());
  CHECK_THROWS_AS((MaterialParams{-1, 0.1, 300}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((MaterialParams{1e6, 0.0, 300}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((MaterialParams{1e6, 1.5, 300}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((MaterialParams{1e6, 0.1, -5}.validate()), std::invalid_argument);
}

TEST_CASE("spin count of the reference volume") {
  CHECK(spin_count(ref_mat(), ref_geom()) == Catch::Approx(8.08569823e5).epsilon(1e-8));
}

TEST_CASE("gyromagnetic ratio folds mu0 into field units") {
  CHECK(constants::gamma_llg == Catch::Approx(2.210198e5).epsilon(1e-6));
}

TEST_CASE("anisotropy validation") {
  AnisotropyModel a{{1, 0, 0}, 4000.0, ref_demag()};
  CHECK_NOTHROW(a.validate());
  a.easy_axis = {1, 1, 0};
  CHECK_THROWS_AS(a.validate(), std::invalid_argument);
  a.easy_axis = {1, 0, 0};
  a.demag = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(a.validate(), std::invalid_argument);
}

TEST_CASE("calibrated uniaxial field reproduces the target barrier") {
  const auto mat = ref_mat();
  const auto geom = ref_geom();
  const Vec3 N = ref_demag();
  const double barrier = 60.0 * constants::k_B * 300.0;
  const double hk = calibrate_hk(barrier, mat, geom, N, {1, 0, 0});
  CHECK(hk == Catch::Approx(4162.499176).margin(0.01));

  // The in-plane barrier (saddle at +-y) must equal the request exactly.
  const AnisotropyModel aniso{{1, 0, 0}, hk, N};
  const double e_easy = magnetic_energy({1, 0, 0}, mat, geom, aniso);
  const double e_saddle = magnetic_energy({0, 1, 0}, mat, geom, aniso);
  const double e_hard = magnetic_energy({0, 0, 1}, mat, geom, aniso);
  CHECK(e_saddle - e_easy == Catch::Approx(barrier).epsilon(1e-9));
  CHECK(e_hard > e_saddle);  // out of plane is the expensive direction

  // Both wells are degenerate.
  CHECK(magnetic_energy({-1, 0, 0}, mat, geom, aniso) ==
        Catch::Approx(e_easy).epsilon(1e-12));
}

TEST_CASE("energy is minimal along the easy axis") {
  const auto mat = ref_mat();
  const auto geom = ref_geom();
  const AnisotropyModel aniso{{1, 0, 0}, 4162.499176, ref_demag()};
  const double e0 = magnetic_energy({1, 0, 0}, mat, geom, aniso);
  for (double th = 0.05; th < M_PI; th += 0.05) {
    const Vec3 m{std::cos(th), std::sin(th), 0};
    CHECK(magnetic_energy(m, mat, geom, aniso) > e0);
  }
}

TEST_CASE("impossible barrier request is rejected") {
  // Shape anisotropy alone already exceeds a tiny requested barrier.
  CHECK_THROWS_AS(
      calibrate_hk(1e-22, ref_mat(), ref_geom(), ref_demag(), Vec3{1, 0, 0}),
      std::invalid_argument);
}

TEST_CASE("field expressions match the energy gradient") {
  const auto mat = ref_mat();
  const AnisotropyModel aniso{{1, 0, 0}, 4162.499176, ref_demag()};
  const Vec3 m{0.8, 0.36, std::sqrt(1 - 0.64 - 0.1296)};
  const Vec3 H = deterministic_field(m, mat, aniso);
  // H = -(1/(mu0 Ms V)) dE/dm, checked by central differences
  const auto geom = ref_geom();
  const double h = 1e-7;
  for (int k = 0; k < 3; k++) {
    Vec3 dp = m, dm_ = m;
    (&dp.x)[k] += h;
    (&dm_.x)[k] -= h;
    const double dEdm = (magnetic_energy(dp, mat, geom, aniso) -
                         magnetic_energy(dm_, mat, geom, aniso)) /
                        (2 * h);
    const double Hk = -dEdm / (constants::mu_0 * mat.Ms * geom.volume());
    CHECK((&H.x)[k] == Catch::Approx(Hk).epsilon(1e-5));
  }
}

TEST_CASE("thermal field statistics") {
  const auto mat = ref_mat();
  const double V = ref_geom().volume();
  const double sigma = thermal_field_sigma(mat, V, 1e-13);
  CHECK(sigma * sigma == Catch::Approx(3.93810182e9).epsilon(1e-8));
  // scaling laws: sigma^2 ~ T / (V dt)
  CHECK(thermal_field_sigma({mat.Ms, mat.alpha, 600.0}, V, 1e-13) ==
        Catch::Approx(sigma * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(thermal_field_sigma(mat, 2 * V, 1e-13) ==
        Catch::Approx(sigma / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(thermal_field_sigma(mat, V, 4e-13) ==
        Catch::Approx(sigma / 2.0).epsilon(1e-12));
  CHECK(thermal_field_sigma({mat.Ms, mat.alpha, 0.0}, V, 1e-13) == 0.0);

  RngStream rng(11, 0);
  const int n = 200000;
  Vec3 mean{0, 0, 0};
  double var = 0;
  for (int i = 0; i < n; i++) {
    const Vec3 h = thermal_field(sigma, rng);
    mean = mean + h;
    var += h.norm2();
  }
  mean = mean / n;
  var /= 3.0 * n;  // per-component variance
  CHECK(std::abs(mean.x) < 5 * sigma / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(mean.y) < 5 * sigma / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(mean.z) < 5 * sigma / std::sqrt(static_cast<double>(n)));
  CHECK(var == Catch::Approx(sigma * sigma).epsilon(0.01));
}

TEST_CASE("spin hall gain of the reference stack") {
  CHECK(spin_hall_gain(0.3, 45e-9, 2.3e-9) == Catch::Approx(5.86956522).epsilon(1e-8));
  // gain scales with the width to thickness ratio
  CHECK(spin_hall_gain(0.3, 90e-9, 2.3e-9) ==
        Catch::Approx(2 * 5.86956522).epsilon(1e-12));
}
