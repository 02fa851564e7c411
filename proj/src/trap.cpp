#include "ionforge/trap.hpp"

#include <cmath>

#include "ionforge/errors.hpp"

namespace ionforge {

namespace {

void check_positive(double v, const char* what) {
  if (!(v > 0.0)) {
    throw DomainError(std::string(what) + " must be positive");
  }
}

}  // namespace

double mathieu_q(const TrapParams& trap, const IonSpecies& species) {
  check_positive(trap.omega_rf_rad_s, "trap.omega_rf");
  check_positive(trap.r0_m, "trap.r0");
  check_positive(species.mass_kg, "species mass");
  check_positive(species.charge_c, "species charge");
  if (trap.v_rf_volts < 0.0) throw DomainError("trap.v_rf must be >= 0");

  return 2.0 * species.charge_c * trap.v_rf_volts /
         (species.mass_kg * trap.r0_m * trap.r0_m * trap.omega_rf_rad_s *
          trap.omega_rf_rad_s);
}

SecularFrequencies secular_frequencies(const TrapParams& trap,
                                       const IonSpecies& species) {
  check_positive(trap.z0_m, "trap.z0");
  check_positive(trap.kappa, "trap.kappa");
  if (trap.u_dc_volts < 0.0) throw DomainError("trap.u_dc must be >= 0");

  SecularFrequencies out;
  out.q = mathieu_q(trap, species);
  out.stable = out.q > 0.0 && out.q < kMathieuStabilityLimit;
  out.omega_radial_rad_s =
      out.q * trap.omega_rf_rad_s / (2.0 * std::sqrt(2.0));
  out.omega_axial_rad_s =
      std::sqrt(2.0 * trap.kappa * species.charge_c * trap.u_dc_volts /
                (species.mass_kg * trap.z0_m * trap.z0_m));
  out.radial_dominant = out.omega_radial_rad_s > out.omega_axial_rad_s;
  return out;
}

StabilityReport stability_report(const TrapParams& trap,
                                 const IonSpecies& species,
                                 double string_threshold) {
  if (!(string_threshold > 1.0)) {
    throw DomainError("string threshold must exceed 1");
  }
  StabilityReport report;
  report.frequencies = secular_frequencies(trap, species);
  report.string_threshold = string_threshold;
  const auto& f = report.frequencies;
  report.radial_axial_ratio = f.omega_axial_rad_s > 0.0
                                  ? f.omega_radial_rad_s / f.omega_axial_rad_s
                                  : 0.0;
  report.string_phase =
      f.stable && report.radial_axial_ratio > string_threshold;
  return report;
}

}  // namespace ionforge
