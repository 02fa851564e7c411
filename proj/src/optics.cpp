#include "ionforge/optics.hpp"

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

double diffraction_limited_spot(const BeamGeometry& beam) {
  check_positive(beam.wavelength_m, "wavelength");
  check_positive(beam.focal_length_m, "focal length");
  check_positive(beam.input_beam_diameter_m, "input beam diameter");
  return 4.0 * beam.wavelength_m * beam.focal_length_m /
         (constants::pi * beam.input_beam_diameter_m);
}

bool spot_below_diffraction_bound(const BeamGeometry& beam) {
  check_positive(beam.spot_diameter_m, "spot diameter");
  return beam.spot_diameter_m < diffraction_limited_spot(beam);
}

double deflection_angle(const DeflectorSpec& deflector, double voltage_v) {
  check_positive(deflector.max_angle_rad, "max deflection angle");
  check_positive(deflector.max_voltage_v, "max voltage");
  if (std::abs(voltage_v) > deflector.max_voltage_v) {
    throw DomainError("deflector voltage beyond +-max_voltage");
  }
  return deflector.max_angle_rad * (voltage_v / deflector.max_voltage_v);
}

double crosstalk(double ion_spacing_m, const BeamGeometry& beam) {
  if (ion_spacing_m < 0.0) throw DomainError("ion spacing must be >= 0");
  check_positive(beam.spot_diameter_m, "spot diameter");
  const double r = ion_spacing_m / beam.spot_diameter_m;
  return std::exp(-8.0 * r * r);
}

double max_spot_for_crosstalk(double ion_spacing_m, double epsilon) {
  check_positive(ion_spacing_m, "ion spacing");
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw DomainError("crosstalk epsilon must lie in (0, 1)");
  }
  return ion_spacing_m * std::sqrt(8.0 / std::log(1.0 / epsilon));
}

long resolvable_spots(const BeamGeometry& beam,
                      const DeflectorSpec& deflector) {
  check_positive(beam.wavelength_m, "wavelength");
  check_positive(beam.input_beam_diameter_m, "input beam diameter");
  if (deflector.max_angle_rad < 0.0) {
    throw DomainError("max deflection angle must be >= 0");
  }
  const double rayleigh_angle =
      1.22 * beam.wavelength_m / beam.input_beam_diameter_m;
  // Nudge before flooring so exact multiples are not lost to rounding.
  return static_cast<long>(
      std::floor(2.0 * deflector.max_angle_rad / rayleigh_angle + 1e-9));
}

long addressable_ions(const DeflectorSpec& deflector, double focal_length_m,
                      double ion_spacing_m) {
  check_positive(deflector.max_angle_rad, "max deflection angle");
  check_positive(focal_length_m, "focal length");
  check_positive(ion_spacing_m, "ion spacing");
  const double span = 2.0 * deflector.max_angle_rad * focal_length_m;
  return static_cast<long>(std::floor(span / ion_spacing_m + 1e-9)) + 1;
}

double pulse_area_error_budget(double intensity_stability,
                               double timing_resolution_s,
                               double pulse_width_s) {
  check_positive(pulse_width_s, "pulse width");
  if (intensity_stability < 0.0 || timing_resolution_s < 0.0) {
    throw DomainError("error-budget inputs must be >= 0");
  }
  const double timing = timing_resolution_s / pulse_width_s;
  return std::hypot(intensity_stability, timing);
}

}  // namespace ionforge
