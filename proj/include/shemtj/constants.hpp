#pragma once

namespace shemtj::constants {

// CODATA 2018 values, SI units. These are fixed physical constants and are
// deliberately not configurable anywhere in the library.
inline constexpr double mu_B = 9.2740100783e-24;   // Bohr magneton [J/T]
inline constexpr double mu_0 = 1.25663706212e-6;   // vacuum permeability [T m/A]
inline constexpr double hbar = 1.054571817e-34;    // reduced Planck constant [J s]
inline constexpr double q_e = 1.602176634e-19;     // elementary charge [C]
inline constexpr double k_B = 1.380649e-23;        // Boltzmann constant [J/K]

// Gyromagnetic ratio gamma = 2 mu_B mu_0 / hbar, [m/(A s)].
// Field amplitudes below are in A/m, so mu_0 is folded into gamma.
inline constexpr double gamma_llg = 2.0 * mu_B * mu_0 / hbar;

}  // namespace shemtj::constants
