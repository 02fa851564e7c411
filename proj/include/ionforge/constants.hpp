#pragma once

// CODATA 2018 values. Strict SI throughout the library; report layers may
// convert for display.

namespace ionforge::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double elementary_charge_c = 1.602176634e-19;  // exact
inline constexpr double planck_j_s = 6.62607015e-34;            // exact
inline constexpr double hbar_j_s = planck_j_s / two_pi;
inline constexpr double boltzmann_j_k = 1.380649e-23;           // exact
inline constexpr double atomic_mass_kg = 1.66053906660e-27;
inline constexpr double epsilon0_f_m = 8.8541878128e-12;
inline constexpr double coulomb_n_m2_c2 =
    1.0 / (4.0 * pi * epsilon0_f_m);
inline constexpr double speed_of_light_m_s = 299792458.0;       // exact
inline constexpr double bohr_magneton_j_t = 9.2740100783e-24;

}  // namespace ionforge::constants
