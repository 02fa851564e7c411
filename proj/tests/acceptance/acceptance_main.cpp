// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned in code; the oracles live in tests/support.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ionforge/chain.hpp"
#include "ionforge/config.hpp"
#include "ionforge/cooling.hpp"
#include "ionforge/dynamics.hpp"
#include "ionforge/harness.hpp"
#include "ionforge/optics.hpp"
#include "ionforge/report.hpp"
#include "support/oracles.hpp"

using namespace ionforge;
namespace k = ionforge::constants;

namespace {

struct Criterion {
  std::string name;
  std::function<void(std::ostringstream&)> run;  // throws on failure
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

double elapsed_ms(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

LambDicke gate_eta() {
  return lamb_dicke_cm(ChainConfig{1, k::two_pi * 200e3, ca40()}, 732e-9,
                       0.0);
}

// The bundled default config when a path is supplied, else the built-in
// defaults with a fixed seed.
RunConfig report_config(const std::string& path) {
  if (!path.empty()) {
    std::ifstream in(path, std::ios::binary);
    if (in) {
      std::ostringstream buf;
      buf << in.rdbuf();
      return parse_config(buf.str());
    }
  }
  auto config = default_config();
  config.seed = 424242;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string config_path = argc > 1 ? argv[1] : "";
  std::vector<Criterion> criteria;

  criteria.push_back({"crosstalk threshold (21.6 um spot at 20 um spacing)",
                      [](std::ostringstream& log) {
    const auto t0 = std::chrono::steady_clock::now();
    const double spot = max_spot_for_crosstalk(20e-6, 1e-3);
    const double ms = elapsed_ms(t0);
    log << "spot=" << spot * 1e6 << "um time=" << ms << "ms";
    require(spot >= 21.3e-6 && spot <= 21.7e-6,
            "spot outside [21.3, 21.7] um");
    require(ms < 1.0, "took longer than 1 ms");
  }});

  criteria.push_back({"resolvable spots of order 100",
                      [](std::ostringstream& log) {
    BeamGeometry beam;  // 397 nm, 3 mm input
    DeflectorSpec defl; // +-9 mrad
    const long n = resolvable_spots(beam, defl);
    log << "spots=" << n;
    require(n >= 80 && n <= 140, "count outside [80, 140]");
  }});

  criteria.push_back({"at least 20 addressable ions",
                      [](std::ostringstream& log) {
    const long n = addressable_ions(DeflectorSpec{}, 30e-3, 20e-6);
    log << "ions=" << n;
    require(n >= 20, "fewer than 20 addressable sites");
  }});

  criteria.push_back({"imaging resolution 4.80 um, below the ion spacing",
                      [](std::ostringstream& log) {
    ImagingChain chain;
    const double sep = imaging_min_separation(chain);
    log << "sep=" << sep * 1e6 << "um";
    require(std::abs(sep - 4.80e-6) <= 0.01e-6, "separation not 4.80 um");
    require(sep < 25e-6, "does not resolve the expected spacing");
  }});

  criteria.push_back({"chain equilibria match brute-force minimization",
                      [](std::ostringstream& log) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int n = 2; n <= 6; ++n) {
      const auto newton = equilibrium_positions(n);
      const auto brute = oracles::brute_force_positions(n);
      for (std::size_t i = 0; i < newton.size(); ++i) {
        require(std::abs(newton[i] - brute[i]) < 1e-7,
                "N=" + std::to_string(n) + " solver/oracle mismatch");
      }
    }
    const auto two = equilibrium_positions(2);
    const double sep_u = two[1] - two[0];
    require(std::abs(sep_u - 1.2599) <= 1e-4,
            "N=2 separation not 1.2599 l");
    const auto spacing = min_spacing(ChainConfig{2, k::two_pi * 100e3,
                                                 ca40()});
    require(spacing.has_value(), "missing two-ion spacing");
    const double ms = elapsed_ms(t0);
    log << "sep(100kHz)=" << *spacing * 1e6 << "um time=" << ms << "ms";
    require(std::abs(*spacing - 26.0e-6) <= 0.1e-6,
            "two-ion spacing not 26.0 +- 0.1 um at 100 kHz");
    require(ms < 1000.0, "took longer than 1 s");
  }});

  criteria.push_back({"normal-mode invariants up to N=10",
                      [](std::ostringstream& log) {
    const double omega = k::two_pi * 200e3;
    for (int n = 1; n <= 10; ++n) {
      const auto u = equilibrium_positions(n);
      const auto modes = axial_normal_modes(u, omega);
      require(std::abs(modes.mode_frequencies_rad_s[0] - omega) / omega <=
                  1e-10,
              "N=" + std::to_string(n) + " CM mode off omega_axial");
      if (n >= 2) {
        require(std::abs(modes.eigenvalues[1] - 3.0) <= 1e-8,
                "N=" + std::to_string(n) + " breathing eigenvalue not 3");
      }
      const Eigen::MatrixXd gram =
          modes.mode_vectors.transpose() * modes.mode_vectors -
          Eigen::MatrixXd::Identity(n, n);
      require(gram.cwiseAbs().maxCoeff() < 1e-10,
              "N=" + std::to_string(n) + " mode vectors not orthonormal");
    }
    log << "N=1..10 ok";
  }});

  criteria.push_back({"Lamb-Dicke parameter 0.216 with recoil cross-check",
                      [](std::ostringstream& log) {
    const auto ld = gate_eta();
    log << "eta=" << ld.eta;
    require(std::abs(ld.eta - 0.216) <= 0.002, "eta not 0.216 +- 0.002");
    const double m = 40.0 * 1.66053906660e-27;
    const double hbar = 1.054571817e-34;
    const double kvec = 2.0 * M_PI / 732e-9;
    const double recoil = hbar * hbar * kvec * kvec / (2.0 * m);
    const double eta_recoil =
        std::sqrt(recoil / (hbar * k::two_pi * 200e3));
    require(std::abs(ld.eta - eta_recoil) < 1e-10,
            "recoil-energy route disagrees");
  }});

  criteria.push_back({"CNOT truth table against the unitary oracle",
                      [](std::ostringstream& log) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto eta = gate_eta();
    const Eigen::MatrixXcd u = oracles::compose(cnot_sequence(0, 1), 2, 2);
    const struct {
      const char* in;
      const char* out;
    } table[] = {{"|00;0>", "|00;0>"}, {"|01;0>", "|01;0>"},
                 {"|10;0>", "|11;0>"}, {"|11;0>", "|10;0>"}};
    double worst_fid = 1.0, worst_phonon = 0.0, worst_oracle = 0.0;
    for (const auto& row : table) {
      const auto in = RegisterState::from_ket(2, 2, row.in);
      const auto out = cnot(in, 0, 1, eta);
      const auto want = RegisterState::from_ket(2, 2, row.out);
      worst_fid = std::min(worst_fid, fidelity(want, out));
      worst_phonon =
          std::max(worst_phonon, out.phonon_excited_population());
      const Eigen::VectorXcd oracle_out = u * in.amplitudes();
      worst_oracle = std::max(
          worst_oracle,
          (out.amplitudes() - oracle_out).cwiseAbs().maxCoeff());
    }
    const double ms = elapsed_ms(t0);
    log << "min_fid=" << worst_fid << " phonon=" << worst_phonon
        << " oracle_dev=" << worst_oracle << " time=" << ms << "ms";
    require(worst_fid >= 1.0 - 1e-9, "truth-table fidelity below 1-1e-9");
    require(worst_phonon < 1e-10, "phonon bus not restored");
    require(worst_oracle < 1e-10, "engine deviates from the oracle");
    require(ms < 1000.0, "took longer than 1 s");
  }});

  criteria.push_back({"unitarity over 10^4 random pulses",
                      [](std::ostringstream& log) {
    std::mt19937 rng(314159);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * k::pi);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> ion(0, 1);
    const auto eta = gate_eta();
    double worst = 0.0;
    for (int rep = 0; rep < 10000; ++rep) {
      auto s = oracles::random_state(2, 3, rng);
      auto& a = s.amplitudes();
      for (Eigen::Index i = 3; i < a.size(); i += 4) a[i] = 0.0;
      a /= a.norm();
      PulseSpec pulse;
      pulse.kind = coin(rng) ? PulseKind::V : PulseKind::U;
      pulse.ion = ion(rng);
      pulse.theta = angle(rng);
      pulse.phi = angle(rng);
      pulse.transition = coin(rng) ? TransitionPair::GroundExcited
                                   : TransitionPair::GroundAux;
      pulse.sideband =
          pulse.kind == PulseKind::U ? (coin(rng) ? 1 : -1) : 0;
      const auto out = apply_pulse(s, pulse, eta);
      worst = std::max(worst, std::abs(out.norm() - 1.0));
    }
    log << "max_norm_dev=" << worst;
    require(worst <= 1e-12, "norm drift beyond 1e-12");
  }});

  criteria.push_back({"pulse-area sensitivity closed form",
                      [](std::ostringstream& log) {
    const double err = 1e-3;
    PulseSpec pulse{PulseKind::V, 0, k::pi, 0.0,
                    TransitionPair::GroundExcited, 0};
    RegisterState s(1, 2);
    const auto ideal = apply_v_pulse(s, pulse);
    const auto off = apply_v_pulse(s, pulse_area_perturbation(pulse, err));
    const double infid = 1.0 - fidelity(ideal, off);
    const double closed =
        1.0 - std::cos(k::pi * err / 2.0) * std::cos(k::pi * err / 2.0);
    log << "infidelity=" << infid << " closed=" << closed;
    require(std::abs(infid - closed) <= 1e-9,
            "infidelity deviates from 1-cos^2(pi*eps/2)");
  }});

  criteria.push_back({"phonon removal bottleneck in [0.9, 1.0] /s",
                      [](std::ostringstream& log) {
    CoolingParams params;
    params.repump_factor = 1.0;
    params.d_lifetime_s = 1.08;
    const double rate = phonon_removal_rate(params);
    log << "rate=" << rate << "/s";
    require(rate >= 0.9 && rate <= 1.0, "rate outside [0.9, 1.0]");
  }});

  criteria.push_back({"readout Monte Carlo vs Poisson-tail oracle",
                      [](std::ostringstream& log) {
    const auto t0 = std::chrono::steady_clock::now();
    ReadoutParams p;
    p.scatter_rate_bright_per_s = 49000.0;
    p.collection_solid_angle_sr = 4.0 * k::pi;
    p.quantum_efficiency = 1.0;
    p.integration_time_s = 1e-3;  // bright mean 50, dark mean 1
    p.dark_rate_per_s = 1000.0;
    p.threshold_counts = 10;
    p.seed = 20260810;
    const long trials = 100000;
    const auto r = simulate_readout(0.5, 0.5, p, trials);

    require(std::abs(r.bright_mean_counts - 50.0) < 1e-9 &&
                std::abs(r.dark_mean_counts - 1.0) < 1e-12,
            "means not 50/1");
    const double p_bd = oracles::poisson_cdf_direct(9, 50.0);
    const double p_db = 1.0 - oracles::poisson_cdf_direct(9, 1.0);
    const double s_bd =
        std::sqrt(p_bd * (1.0 - p_bd) / double(r.trials_bright));
    const double s_db =
        std::sqrt(p_db * (1.0 - p_db) / double(r.trials_dark));
    require(std::abs(r.bright_to_dark_rate - p_bd) <= 3.0 * s_bd,
            "bright->dark rate off the Poisson tail by >3 sigma");
    require(std::abs(r.dark_to_bright_rate - p_db) <= 3.0 * s_db,
            "dark->bright rate off the Poisson tail by >3 sigma");

    const auto again = simulate_readout(0.5, 0.5, p, trials);
    require(r.histogram == again.histogram,
            "identical seed gave a different histogram");
    const double ms = elapsed_ms(t0);
    log << "bd=" << r.bright_to_dark_rate << " db=" << r.dark_to_bright_rate
        << " time=" << ms << "ms";
    require(ms < 5000.0, "took longer than 5 s");
  }});

  criteria.push_back({"byte-identical design report for a fixed seed",
                      [&config_path](std::ostringstream& log) {
    const auto config = report_config(config_path);
    const std::string a = emit_json(run_design_report(config));
    const std::string b = emit_json(run_design_report(config));
    log << (config_path.empty() ? "built-in defaults" : config_path)
        << " bytes=" << a.size();
    require(!a.empty() && a == b, "emitted JSON differs between runs");
  }});

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::ostringstream log;
    std::string error;
    try {
      criteria[i].run(log);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool ok = error.empty();
    if (!ok) ++failures;
    std::string line = ok ? "PASS " : "FAIL ";
    line += std::to_string(i + 1) + ". " + criteria[i].name;
    if (!log.str().empty()) line += "  [" + log.str() + "]";
    if (!ok) line += "  <- " + error;
    std::printf("%s\n", line.c_str());
  }
  if (failures == 0) {
    std::printf("all %zu criteria passed\n", criteria.size());
  } else {
    std::printf("%d of %zu criteria FAILED\n", failures, criteria.size());
  }
  return failures == 0 ? 0 : 1;
}
