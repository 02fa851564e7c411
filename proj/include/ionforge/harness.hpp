#pragma once

#include "ionforge/config.hpp"
#include "ionforge/report.hpp"
#include "ionforge/script.hpp"

namespace ionforge {

// Per-subcommand reports. Each is deterministic given the config (and seed,
// where Monte Carlo is involved).
Report trap_report(const RunConfig& config);
Report chain_report(const RunConfig& config);
Report optics_report(const RunConfig& config);
Report cooling_report(const RunConfig& config);
Report readout_report(const RunConfig& config);

// Full design report: all sections plus the feasibility verdict (addressable
// ions >= 20, crosstalk within budget, sidebands resolved, imaging resolves
// the expected spacing).
Report run_design_report(const RunConfig& config);

// Run a pulse script on the configured register and report the final
// amplitudes, fidelity and phonon restoration.
Report run_gate_demo(const RunConfig& config, const GateScript& script);

}  // namespace ionforge
