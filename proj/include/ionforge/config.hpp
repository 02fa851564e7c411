#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ionforge/cooling.hpp"
#include "ionforge/optics.hpp"
#include "ionforge/trap.hpp"

namespace ionforge {

// Everything a run needs, with defaults mirroring the apparatus numbers.
// All values strict SI (m, s, V, rad/s, W/m^2).
struct RunConfig {
  int schema_version = 1;
  std::string species_name = "Ca40";

  TrapParams trap;
  double trap_string_threshold = 3.0;

  struct Chain {
    int n_ions = 5;
    double tolerance = 1e-10;
  } chain;

  struct Gate {
    int n_max = 3;
    std::string scheme = "single-laser";  // or "raman"
    std::string script_path;
    double area_error = 0.0;
    double wavelength_m = 732e-9;        // addressing beam for eta
    double projection_angle_rad = 0.0;
  } gate;

  BeamGeometry beam;
  DeflectorSpec deflector;

  struct Optics {
    double ion_spacing_m = 20e-6;
    double crosstalk_budget = 1e-3;
    double intensity_stability = 1e-3;
    double timing_resolution_s = 1e-9;
    double pulse_width_s = 1e-6;
  } optics;

  CoolingParams cooling;
  struct CoolingChecks {
    double laser_linewidth_rad_s = constants::two_pi * 10e3;
    double doppler_laser_linewidth_rad_s = constants::two_pi * 1e6;
    double resolution_factor = 10.0;
  } cooling_checks;

  struct Readout {
    double scatter_rate_bright_per_s = 1e7;
    double collection_solid_angle_sr = 0.25;
    double quantum_efficiency = 0.2;
    double integration_time_s = 2e-3;
    double dark_rate_per_s = 500.0;
    int threshold_counts = 20;
    double p_bright = 0.5;
    long trials = 2000;
  } readout;

  ImagingChain imaging;
  double imaging_expected_spacing_m = 25e-6;

  std::optional<std::uint64_t> seed;  // no default: randomized runs must set it
  std::string output_format = "json";

  // Derived views.
  IonSpecies species() const;
  ReadoutParams readout_params() const;  // throws ConfigError without a seed
};

// Parse the flat key=value format. Lines are `key = value`, optionally under
// `[section]` headers that prefix bare keys; `#` starts a comment. Unknown
// keys, syntax errors and range violations throw ConfigError with the line
// number and key.
RunConfig parse_config(const std::string& text);

// Canonical serialized form (sections in fixed order, 12 significant
// digits); parse -> serialize -> parse is a fixed point.
std::string serialize_config(const RunConfig& config);

// Range-check a fully assembled config (also called by parse_config).
void validate_config(const RunConfig& config);

RunConfig default_config();

}  // namespace ionforge
