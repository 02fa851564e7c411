#include "ionforge/cooling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ionforge/errors.hpp"

namespace ionforge {

namespace {

void check_positive(double v, const char* what) {
  if (!(v > 0.0)) {
    throw DomainError(std::string(what) + " must be positive");
  }
}

// 53-bit uniform in [0,1) from the raw generator; the standard distribution
// adaptors are implementation-defined, this is reproducible everywhere.
double uniform01(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

// Inverse-CDF Poisson sample; exact and deterministic for the means used
// here (desk-scale counts).
int poisson_sample(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0;
  const double u = uniform01(rng);
  long double p = std::exp((long double)-mean);
  long double cdf = p;
  int k = 0;
  while (u > cdf && k < 100000000) {
    ++k;
    p *= mean / k;
    cdf += p;
  }
  return k;
}

}  // namespace

DopplerLimit doppler_limit(const CoolingParams& params,
                           double omega_axial_rad_s) {
  check_positive(params.gamma_dipole_rad_s, "gamma_dipole");
  check_positive(omega_axial_rad_s, "omega_axial");
  DopplerLimit out;
  out.temperature_k = constants::hbar_j_s * params.gamma_dipole_rad_s /
                      (2.0 * constants::boltzmann_j_k);
  out.mean_phonons = params.gamma_dipole_rad_s / (2.0 * omega_axial_rad_s);
  return out;
}

std::vector<SpectralLine> sideband_spectrum(double omega0_rad_s,
                                            const ChainModes& chain) {
  check_positive(omega0_rad_s, "carrier frequency");
  if (chain.mode_frequencies_rad_s.empty()) {
    throw DomainError("chain has no modes");
  }
  std::vector<SpectralLine> lines;
  lines.reserve(2 * chain.mode_frequencies_rad_s.size() + 1);
  const int n_modes = static_cast<int>(chain.mode_frequencies_rad_s.size());
  for (int k = n_modes - 1; k >= 0; --k) {
    lines.push_back({"red(" + std::to_string(k) + ")",
                     omega0_rad_s - chain.mode_frequencies_rad_s[k]});
  }
  lines.push_back({"carrier", omega0_rad_s});
  for (int k = 0; k < n_modes; ++k) {
    lines.push_back({"blue(" + std::to_string(k) + ")",
                     omega0_rad_s + chain.mode_frequencies_rad_s[k]});
  }
  return lines;
}

ResolutionCheck sideband_resolution_check(double laser_linewidth_rad_s,
                                          double omega_cm_rad_s,
                                          double factor) {
  check_positive(laser_linewidth_rad_s, "laser linewidth");
  check_positive(omega_cm_rad_s, "CM frequency");
  check_positive(factor, "resolution factor");
  ResolutionCheck out;
  out.required_factor = factor;
  out.margin = omega_cm_rad_s / laser_linewidth_rad_s;
  out.pass = laser_linewidth_rad_s < omega_cm_rad_s / factor;
  return out;
}

bool doppler_linewidth_check(double laser_linewidth_rad_s) {
  check_positive(laser_linewidth_rad_s, "laser linewidth");
  return laser_linewidth_rad_s < kDopplerLinewidthBoundRadS;
}

double phonon_removal_rate(const CoolingParams& params) {
  check_positive(params.d_lifetime_s, "D-state lifetime");
  if (params.repump_factor < 1.0) {
    throw DomainError("repump_factor must be >= 1");
  }
  return params.repump_factor / params.d_lifetime_s;
}

double cooling_time_s(double mean_phonons, double removal_rate_per_s) {
  if (mean_phonons < 0.0) throw DomainError("mean phonons must be >= 0");
  check_positive(removal_rate_per_s, "removal rate");
  return mean_phonons / removal_rate_per_s;
}

double collection_efficiency(const ReadoutParams& params) {
  if (!(params.collection_solid_angle_sr > 0.0) ||
      params.collection_solid_angle_sr > 4.0 * constants::pi) {
    throw DomainError("collection solid angle must lie in (0, 4pi]");
  }
  if (params.quantum_efficiency < 0.0 || params.quantum_efficiency > 1.0) {
    throw DomainError("quantum efficiency must lie in [0, 1]");
  }
  return params.collection_solid_angle_sr / (4.0 * constants::pi) *
         params.quantum_efficiency;
}

double poisson_cdf(int k, double mean) {
  if (mean < 0.0) throw DomainError("Poisson mean must be >= 0");
  if (k < 0) return 0.0;
  if (mean == 0.0) return 1.0;
  long double p = std::exp((long double)-mean);
  long double cdf = p;
  for (int i = 1; i <= k; ++i) {
    p *= mean / i;
    cdf += p;
  }
  return std::min(1.0, (double)cdf);
}

ReadoutResult simulate_readout(double p_bright, double p_dark,
                               const ReadoutParams& params, long trials) {
  if (p_bright < 0.0 || p_dark < 0.0 ||
      std::abs(p_bright + p_dark - 1.0) > 1e-12) {
    throw DomainError("state probabilities must be >= 0 and sum to 1");
  }
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (params.scatter_rate_bright_per_s < 0.0 ||
      params.dark_rate_per_s < 0.0 || params.integration_time_s < 0.0) {
    throw DomainError("rates and integration time must be >= 0");
  }
  if (params.threshold_counts < 0) {
    throw DomainError("threshold must be >= 0");
  }

  ReadoutResult out;
  out.trials = trials;
  const double eff = collection_efficiency(params);
  out.bright_mean_counts =
      (params.scatter_rate_bright_per_s * eff + params.dark_rate_per_s) *
      params.integration_time_s;
  out.dark_mean_counts = params.dark_rate_per_s * params.integration_time_s;

  const int thr = params.threshold_counts;
  out.analytic_bright_to_dark = poisson_cdf(thr - 1, out.bright_mean_counts);
  out.analytic_dark_to_bright =
      1.0 - poisson_cdf(thr - 1, out.dark_mean_counts);
  out.threshold_warning =
      thr > out.bright_mean_counts +
                10.0 * std::sqrt(out.bright_mean_counts + 1.0) + 10.0;

  std::mt19937_64 rng(params.seed);
  for (long t = 0; t < trials; ++t) {
    const bool bright = uniform01(rng) < p_bright;
    const double mean =
        bright ? out.bright_mean_counts : out.dark_mean_counts;
    const int counts = poisson_sample(rng, mean);
    ++out.histogram[counts];
    const bool classified_bright = counts >= thr;
    if (bright) {
      ++out.trials_bright;
      if (!classified_bright) ++out.bright_misclassified;
    } else {
      ++out.trials_dark;
      if (classified_bright) ++out.dark_misclassified;
    }
  }
  out.bright_to_dark_rate =
      out.trials_bright > 0
          ? double(out.bright_misclassified) / double(out.trials_bright)
          : 0.0;
  out.dark_to_bright_rate =
      out.trials_dark > 0
          ? double(out.dark_misclassified) / double(out.trials_dark)
          : 0.0;
  return out;
}

double imaging_min_separation(const ImagingChain& chain) {
  check_positive(chain.magnification, "magnification");
  check_positive(chain.mcp_channel_pitch_m, "MCP channel pitch");
  if (chain.min_channel_separation_pitches < 1) {
    throw DomainError("channel separation must be >= 1 pitch");
  }
  return chain.mcp_channel_pitch_m * chain.min_channel_separation_pitches /
         chain.magnification;
}

}  // namespace ionforge
