#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ionforge/chain.hpp"
#include "ionforge/constants.hpp"

namespace ionforge {

// Doppler/sideband cooling knobs. gamma_dipole is the 397 nm dipole
// linewidth; it is an assumed constant, not a measured input. repump_factor
// is the effective D-state lifetime shortening provided by the 866 nm
// coupling (1 = no repump).
struct CoolingParams {
  double gamma_dipole_rad_s = constants::two_pi * 20.7e6;
  double i_sat_w_m2 = 100.0;  // ~10 mW/cm^2
  double d_lifetime_s = 1.08;
  double repump_factor = 1.0;
};

struct DopplerLimit {
  double temperature_k = 0.0;
  double mean_phonons = 0.0;
};

// T = hbar*gamma/(2 kB); n_bar = gamma/(2 omega_axial).
DopplerLimit doppler_limit(const CoolingParams& params,
                           double omega_axial_rad_s);

struct SpectralLine {
  std::string label;  // "red(k)", "carrier", "blue(k)" with k the mode index
  double frequency_rad_s = 0.0;
};

// Carrier plus first-order red/blue sidebands of every axial mode, sorted by
// frequency. The CM sidebands are the innermost pair.
std::vector<SpectralLine> sideband_spectrum(double omega0_rad_s,
                                            const ChainModes& chain);

struct ResolutionCheck {
  bool pass = false;
  double margin = 0.0;  // omega_cm / linewidth
  double required_factor = 0.0;
};

// Sideband-resolution requirement: linewidth < omega_cm / factor.
ResolutionCheck sideband_resolution_check(double laser_linewidth_rad_s,
                                          double omega_cm_rad_s,
                                          double factor = 10.0);

// Doppler-stage requirement on the 397 nm laser: linewidth below 2pi*10 MHz.
inline constexpr double kDopplerLinewidthBoundRadS =
    constants::two_pi * 10e6;
bool doppler_linewidth_check(double laser_linewidth_rad_s);

// Sideband-cooling bottleneck: repump_factor / d_lifetime phonons per second.
double phonon_removal_rate(const CoolingParams& params);

// Time to remove n_bar phonons at the given rate.
double cooling_time_s(double mean_phonons, double removal_rate_per_s);

// Quantum-jump detection chain.
struct ReadoutParams {
  double scatter_rate_bright_per_s = 0.0;
  double collection_solid_angle_sr = 0.25;
  double quantum_efficiency = 1.0;
  double integration_time_s = 0.0;
  double dark_rate_per_s = 0.0;
  int threshold_counts = 0;  // classified bright iff counts >= threshold
  std::uint64_t seed = 0;
};

// (solid angle / 4 pi) * quantum efficiency.
double collection_efficiency(const ReadoutParams& params);

// Poisson CDF P(N <= k) by direct summation (k < 0 gives 0).
double poisson_cdf(int k, double mean);

struct ReadoutResult {
  std::map<int, long> histogram;  // detected counts -> occurrences
  long trials = 0;
  long trials_bright = 0;
  long trials_dark = 0;
  long bright_misclassified = 0;  // true bright classified dark
  long dark_misclassified = 0;    // true dark classified bright
  double bright_to_dark_rate = 0.0;
  double dark_to_bright_rate = 0.0;
  double analytic_bright_to_dark = 0.0;  // Poisson-tail prediction
  double analytic_dark_to_bright = 0.0;
  double bright_mean_counts = 0.0;
  double dark_mean_counts = 0.0;
  bool threshold_warning = false;
};

// Monte Carlo quantum-jump readout: each trial draws the ion state from
// (p_bright, p_dark), then a Poisson photon count at the state's mean, and
// classifies against the threshold. Deterministic for a given seed.
ReadoutResult simulate_readout(double p_bright, double p_dark,
                               const ReadoutParams& params, long trials);

// Two-lens relay onto a dual-stage MCP.
struct ImagingChain {
  double magnification = 7.5;
  double mcp_channel_pitch_m = 12e-6;
  int min_channel_separation_pitches = 3;  // 36 um at the MCP input
};

// Smallest object-plane ion separation the MCP resolves:
// (pitch * separation_pitches) / magnification.
double imaging_min_separation(const ImagingChain& chain);

}  // namespace ionforge
