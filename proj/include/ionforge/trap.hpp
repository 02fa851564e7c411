#pragma once

#include "ionforge/constants.hpp"
#include "ionforge/species.hpp"

namespace ionforge {

// Linear RF quadrupole trap drive and geometry. Defaults follow the
// apparatus: 1.7 mm gap between the RF rods (r0 = half the gap) and 10 mm
// endcap separation (z0 = half).
struct TrapParams {
  double v_rf_volts = 300.0;
  double omega_rf_rad_s = constants::two_pi * 10e6;
  double r0_m = 0.85e-3;
  double u_dc_volts = 27.3;
  double z0_m = 5.0e-3;
  double kappa = 0.3;  // endcap geometric factor, configurable
};

// First-order stability boundary of the a=0 Mathieu equation.
inline constexpr double kMathieuStabilityLimit = 0.908;

struct SecularFrequencies {
  double omega_radial_rad_s = 0.0;
  double omega_axial_rad_s = 0.0;
  double q = 0.0;
  bool stable = false;
  bool radial_dominant = false;  // design goal: omega_radial > omega_axial
};

struct StabilityReport {
  SecularFrequencies frequencies;
  double radial_axial_ratio = 0.0;  // 0 when there is no axial confinement
  double string_threshold = 0.0;
  bool string_phase = false;
};

// Mathieu drive parameter. Convention used throughout this library:
//   q = 2*charge*v_rf / (mass * r0^2 * omega_rf^2)
// Throws DomainError on non-positive r0/omega_rf/mass/charge or negative
// v_rf; v_rf = 0 is allowed and gives q = 0.
double mathieu_q(const TrapParams& trap, const IonSpecies& species);

// Lowest-order secular frequencies:
//   omega_radial = q*omega_rf/(2*sqrt(2))   (a = 0, DC de-confinement
//                                            from the endcaps neglected)
//   omega_axial  = sqrt(2*kappa*charge*u_dc/(mass*z0^2))
// If q falls outside (0, kMathieuStabilityLimit) the result carries
// stable = false and the radial entry is not usable.
SecularFrequencies secular_frequencies(const TrapParams& trap,
                                       const IonSpecies& species);

// Aggregate view: both frequencies plus the string-phase heuristic
// (radial/axial ratio above a configured threshold).
StabilityReport stability_report(const TrapParams& trap,
                                 const IonSpecies& species,
                                 double string_threshold = 3.0);

}  // namespace ionforge
