#pragma once

#include "ionforge/constants.hpp"

namespace ionforge {

// Focused addressing beam. spot_diameter is the 1/e^2 intensity diameter at
// focus. The ~2 degree wedge that tilts the line of focus is carried as a
// record-only constant (no ray tracing here).
struct BeamGeometry {
  double spot_diameter_m = 10e-6;
  double wavelength_m = 397e-9;
  double input_beam_diameter_m = 3e-3;
  double focal_length_m = 30e-3;
  double tilt_wedge_rad = 2.0 * constants::pi / 180.0;
};

// Electro-optic deflector with a linear voltage response and instantaneous
// gating after switch_time.
struct DeflectorSpec {
  double max_angle_rad = 9e-3;
  double max_voltage_v = 3000.0;
  double switch_time_s = 10e-9;
};

// Gaussian 1/e^2 focus diameter reachable with this lens and input beam:
// 4*lambda*f/(pi*D_in).
double diffraction_limited_spot(const BeamGeometry& beam);

// True when the requested spot is below the diffraction bound (the geometry
// is not physically realizable as specified).
bool spot_below_diffraction_bound(const BeamGeometry& beam);

// angle = max_angle * (V / max_voltage); |V| <= max_voltage.
double deflection_angle(const DeflectorSpec& deflector, double voltage_v);

// Relative intensity of the addressed Gaussian beam at the neighbouring ion:
// exp(-8 d^2 / D^2) with D the 1/e^2 diameter.
double crosstalk(double ion_spacing_m, const BeamGeometry& beam);

// Largest 1/e^2 spot diameter keeping the neighbour intensity at epsilon:
// D = d * sqrt(8 / ln(1/epsilon)). Exact inverse of crosstalk in D.
double max_spot_for_crosstalk(double ion_spacing_m, double epsilon);

// Rayleigh-resolvable spots across the full deflection range:
// floor(2*max_angle / (1.22*lambda/input_beam_diameter)).
long resolvable_spots(const BeamGeometry& beam, const DeflectorSpec& deflector);

// Distinct ion sites reachable in the focal plane:
// floor(2*max_angle*focal_length / ion_spacing) + 1.
long addressable_ions(const DeflectorSpec& deflector, double focal_length_m,
                      double ion_spacing_m);

// Fractional pulse-area error: root-sum-square of the intensity stability
// and timing_resolution/pulse_width.
double pulse_area_error_budget(double intensity_stability,
                               double timing_resolution_s,
                               double pulse_width_s);

}  // namespace ionforge
