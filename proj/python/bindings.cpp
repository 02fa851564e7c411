#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ionforge/chain.hpp"
#include "ionforge/config.hpp"
#include "ionforge/cooling.hpp"
#include "ionforge/dynamics.hpp"
#include "ionforge/errors.hpp"
#include "ionforge/harness.hpp"
#include "ionforge/optics.hpp"
#include "ionforge/report.hpp"
#include "ionforge/script.hpp"
#include "ionforge/species.hpp"
#include "ionforge/trap.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace ionforge;

PYBIND11_MODULE(_ionforge, m) {
  m.doc() = "Cold-trapped-ion quantum computer design and simulation toolkit";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError",
                                            PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError",
                                           PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  // --- species ---
  py::class_<Transition>(m, "Transition")
      .def_readonly("label", &Transition::label)
      .def_readonly("wavelength_m", &Transition::wavelength_m)
      .def_readonly("lifetime_s", &Transition::lifetime_s);
  py::class_<IonSpecies>(m, "IonSpecies")
      .def_readonly("name", &IonSpecies::name)
      .def_readonly("mass_kg", &IonSpecies::mass_kg)
      .def_readonly("charge_c", &IonSpecies::charge_c)
      .def_readonly("transitions", &IonSpecies::transitions)
      .def("transition", &IonSpecies::transition,
           py::return_value_policy::reference_internal);
  m.def("ca40", &ca40);

  py::enum_<Scheme>(m, "Scheme")
      .value("SINGLE_LASER", Scheme::SingleLaser)
      .value("RAMAN", Scheme::Raman);
  py::class_<QubitAssignment>(m, "QubitAssignment")
      .def_readonly("zero", &QubitAssignment::zero)
      .def_readonly("one", &QubitAssignment::one)
      .def_readonly("aux", &QubitAssignment::aux)
      .def_readonly("scheme", &QubitAssignment::scheme)
      .def_readonly("zeeman_field_t", &QubitAssignment::zeeman_field_t)
      .def_readonly("zeeman_splitting_rad_s",
                    &QubitAssignment::zeeman_splitting_rad_s);
  m.def("qubit_assignment", &qubit_assignment, "scheme"_a);

  // --- trap ---
  py::class_<TrapParams>(m, "TrapParams")
      .def(py::init<>())
      .def_readwrite("v_rf_volts", &TrapParams::v_rf_volts)
      .def_readwrite("omega_rf_rad_s", &TrapParams::omega_rf_rad_s)
      .def_readwrite("r0_m", &TrapParams::r0_m)
      .def_readwrite("u_dc_volts", &TrapParams::u_dc_volts)
      .def_readwrite("z0_m", &TrapParams::z0_m)
      .def_readwrite("kappa", &TrapParams::kappa);
  py::class_<SecularFrequencies>(m, "SecularFrequencies")
      .def_readonly("omega_radial_rad_s",
                    &SecularFrequencies::omega_radial_rad_s)
      .def_readonly("omega_axial_rad_s",
                    &SecularFrequencies::omega_axial_rad_s)
      .def_readonly("q", &SecularFrequencies::q)
      .def_readonly("stable", &SecularFrequencies::stable)
      .def_readonly("radial_dominant", &SecularFrequencies::radial_dominant);
  py::class_<StabilityReport>(m, "StabilityReport")
      .def_readonly("frequencies", &StabilityReport::frequencies)
      .def_readonly("radial_axial_ratio",
                    &StabilityReport::radial_axial_ratio)
      .def_readonly("string_threshold", &StabilityReport::string_threshold)
      .def_readonly("string_phase", &StabilityReport::string_phase);
  m.def("mathieu_q", &mathieu_q, "trap"_a, "species"_a);
  m.def("secular_frequencies", &secular_frequencies, "trap"_a, "species"_a);
  m.def("stability_report", &stability_report, "trap"_a, "species"_a,
        "string_threshold"_a = 3.0);
  m.attr("MATHIEU_STABILITY_LIMIT") = kMathieuStabilityLimit;

  // --- chain ---
  py::class_<ChainConfig>(m, "ChainConfig")
      .def(py::init([](int n_ions, double omega_axial_rad_s,
                       const IonSpecies& species) {
             return ChainConfig{n_ions, omega_axial_rad_s, species};
           }),
           "n_ions"_a, "omega_axial_rad_s"_a, "species"_a)
      .def_readwrite("n_ions", &ChainConfig::n_ions)
      .def_readwrite("omega_axial_rad_s", &ChainConfig::omega_axial_rad_s)
      .def_readwrite("species", &ChainConfig::species);
  py::class_<SolverOptions>(m, "SolverOptions")
      .def(py::init<>())
      .def_readwrite("tol", &SolverOptions::tol)
      .def_readwrite("max_iter", &SolverOptions::max_iter);
  py::class_<ChainModes>(m, "ChainModes")
      .def_readonly("length_scale_m", &ChainModes::length_scale_m)
      .def_readonly("positions_u", &ChainModes::positions_u)
      .def_readonly("positions_m", &ChainModes::positions_m)
      .def_readonly("mode_eigenvalues", &ChainModes::mode_eigenvalues)
      .def_readonly("mode_frequencies_rad_s",
                    &ChainModes::mode_frequencies_rad_s)
      .def_readonly("mode_vectors", &ChainModes::mode_vectors)
      .def_readonly("min_spacing_m", &ChainModes::min_spacing_m);
  py::class_<LambDicke>(m, "LambDicke")
      .def_readonly("eta", &LambDicke::eta)
      .def_readonly("wavevector_rad_m", &LambDicke::wavevector_rad_m)
      .def_readonly("projection_angle_rad", &LambDicke::projection_angle_rad)
      .def_readonly("mode_index", &LambDicke::mode_index)
      .def_readonly("no_axial_coupling", &LambDicke::no_axial_coupling);
  m.def("length_scale", &length_scale, "omega_axial_rad_s"_a, "species"_a);
  m.def("equilibrium_positions", &equilibrium_positions, "n_ions"_a,
        "opts"_a = SolverOptions{});
  m.def("max_force_residual", &max_force_residual, "positions_u"_a);
  m.def("axial_normal_modes", &axial_normal_modes, "positions_u"_a,
        "omega_axial_rad_s"_a, "tol"_a = 1e-8);
  py::class_<ModeDecomposition>(m, "ModeDecomposition")
      .def_readonly("eigenvalues", &ModeDecomposition::eigenvalues)
      .def_readonly("mode_frequencies_rad_s",
                    &ModeDecomposition::mode_frequencies_rad_s)
      .def_readonly("mode_vectors", &ModeDecomposition::mode_vectors);
  m.def("chain_modes", &chain_modes, "cfg"_a, "opts"_a = SolverOptions{});
  m.def("min_spacing", &min_spacing, "cfg"_a, "opts"_a = SolverOptions{});
  m.def("lamb_dicke_cm", &lamb_dicke_cm, "cfg"_a, "wavelength_m"_a,
        "projection_angle_rad"_a);

  // --- coherent dynamics ---
  py::enum_<Level>(m, "Level")
      .value("GROUND", Level::Ground)
      .value("EXCITED", Level::Excited)
      .value("AUX", Level::Aux);
  py::enum_<TransitionPair>(m, "TransitionPair")
      .value("GROUND_EXCITED", TransitionPair::GroundExcited)
      .value("GROUND_AUX", TransitionPair::GroundAux);
  py::enum_<PulseKind>(m, "PulseKind")
      .value("V", PulseKind::V)
      .value("U", PulseKind::U);
  py::class_<PulseSpec>(m, "PulseSpec")
      .def(py::init([](PulseKind kind, int ion, double theta, double phi,
                       TransitionPair transition, int sideband) {
             return PulseSpec{kind, ion, theta, phi, transition, sideband};
           }),
           "kind"_a, "ion"_a, "theta"_a, "phi"_a = 0.0,
           "transition"_a = TransitionPair::GroundExcited, "sideband"_a = 0)
      .def_readwrite("kind", &PulseSpec::kind)
      .def_readwrite("ion", &PulseSpec::ion)
      .def_readwrite("theta", &PulseSpec::theta)
      .def_readwrite("phi", &PulseSpec::phi)
      .def_readwrite("transition", &PulseSpec::transition)
      .def_readwrite("sideband", &PulseSpec::sideband);
  m.def("raman_pulse", &raman_pulse, "kind"_a, "ion"_a, "theta"_a,
        "pump_phase"_a, "stokes_phase"_a,
        "transition"_a = TransitionPair::GroundExcited, "sideband"_a = 0);
  m.def("pulse_area_perturbation", &pulse_area_perturbation, "pulse"_a,
        "fractional_error"_a);

  py::class_<RegisterState>(m, "RegisterState")
      .def(py::init<int, int>(), "n_ions"_a, "n_max"_a)
      .def_static("basis_state", &RegisterState::basis_state, "n_ions"_a,
                  "n_max"_a, "levels"_a, "phonon"_a)
      .def_static("from_ket", &RegisterState::from_ket, "n_ions"_a, "n_max"_a,
                  "ket"_a)
      .def_property_readonly("n_ions", &RegisterState::n_ions)
      .def_property_readonly("n_max", &RegisterState::n_max)
      .def_property_readonly("dim", &RegisterState::dim)
      .def("index", &RegisterState::index, "levels"_a, "phonon"_a)
      .def("amplitude", &RegisterState::amplitude, "levels"_a, "phonon"_a)
      .def("amplitudes",
           [](const RegisterState& s) { return s.amplitudes(); })
      .def("norm", &RegisterState::norm)
      .def("phonon_distribution", &RegisterState::phonon_distribution)
      .def("phonon_excited_population",
           &RegisterState::phonon_excited_population)
      .def("basis_label", &RegisterState::basis_label, "index"_a);

  m.def("apply_v_pulse", &apply_v_pulse, "state"_a, "pulse"_a);
  m.def("apply_u_pulse", &apply_u_pulse, "state"_a, "pulse"_a, "eta"_a);
  m.def("apply_pulse", &apply_pulse, "state"_a, "pulse"_a, "eta"_a);
  m.def("controlled_z_sequence", &controlled_z_sequence, "control"_a,
        "target"_a);
  m.def("cnot_sequence", &cnot_sequence, "control"_a, "target"_a);
  m.def("controlled_z", &controlled_z, "state"_a, "control"_a, "target"_a,
        "eta"_a);
  m.def("cnot", &cnot, "state"_a, "control"_a, "target"_a, "eta"_a);
  m.def("fidelity", &fidelity, "a"_a, "b"_a);

  // --- addressing optics ---
  py::class_<BeamGeometry>(m, "BeamGeometry")
      .def(py::init<>())
      .def_readwrite("spot_diameter_m", &BeamGeometry::spot_diameter_m)
      .def_readwrite("wavelength_m", &BeamGeometry::wavelength_m)
      .def_readwrite("input_beam_diameter_m",
                     &BeamGeometry::input_beam_diameter_m)
      .def_readwrite("focal_length_m", &BeamGeometry::focal_length_m)
      .def_readwrite("tilt_wedge_rad", &BeamGeometry::tilt_wedge_rad);
  py::class_<DeflectorSpec>(m, "DeflectorSpec")
      .def(py::init<>())
      .def_readwrite("max_angle_rad", &DeflectorSpec::max_angle_rad)
      .def_readwrite("max_voltage_v", &DeflectorSpec::max_voltage_v)
      .def_readwrite("switch_time_s", &DeflectorSpec::switch_time_s);
  m.def("diffraction_limited_spot", &diffraction_limited_spot, "beam"_a);
  m.def("spot_below_diffraction_bound", &spot_below_diffraction_bound,
        "beam"_a);
  m.def("deflection_angle", &deflection_angle, "deflector"_a, "voltage_v"_a);
  m.def("crosstalk", &crosstalk, "ion_spacing_m"_a, "beam"_a);
  m.def("max_spot_for_crosstalk", &max_spot_for_crosstalk, "ion_spacing_m"_a,
        "epsilon"_a);
  m.def("resolvable_spots", &resolvable_spots, "beam"_a, "deflector"_a);
  m.def("addressable_ions", &addressable_ions, "deflector"_a,
        "focal_length_m"_a, "ion_spacing_m"_a);
  m.def("pulse_area_error_budget", &pulse_area_error_budget,
        "intensity_stability"_a, "timing_resolution_s"_a, "pulse_width_s"_a);

  // --- cooling and readout ---
  py::class_<CoolingParams>(m, "CoolingParams")
      .def(py::init<>())
      .def_readwrite("gamma_dipole_rad_s", &CoolingParams::gamma_dipole_rad_s)
      .def_readwrite("i_sat_w_m2", &CoolingParams::i_sat_w_m2)
      .def_readwrite("d_lifetime_s", &CoolingParams::d_lifetime_s)
      .def_readwrite("repump_factor", &CoolingParams::repump_factor);
  py::class_<DopplerLimit>(m, "DopplerLimit")
      .def_readonly("temperature_k", &DopplerLimit::temperature_k)
      .def_readonly("mean_phonons", &DopplerLimit::mean_phonons);
  py::class_<SpectralLine>(m, "SpectralLine")
      .def_readonly("label", &SpectralLine::label)
      .def_readonly("frequency_rad_s", &SpectralLine::frequency_rad_s);
  py::class_<ResolutionCheck>(m, "ResolutionCheck")
      .def_readonly("pass_", &ResolutionCheck::pass)
      .def_readonly("margin", &ResolutionCheck::margin)
      .def_readonly("required_factor", &ResolutionCheck::required_factor);
  m.def("doppler_limit", &doppler_limit, "params"_a, "omega_axial_rad_s"_a);
  m.def("sideband_spectrum", &sideband_spectrum, "omega0_rad_s"_a, "chain"_a);
  m.def("sideband_resolution_check", &sideband_resolution_check,
        "laser_linewidth_rad_s"_a, "omega_cm_rad_s"_a, "factor"_a = 10.0);
  m.def("doppler_linewidth_check", &doppler_linewidth_check,
        "laser_linewidth_rad_s"_a);
  m.def("phonon_removal_rate", &phonon_removal_rate, "params"_a);
  m.def("cooling_time_s", &cooling_time_s, "mean_phonons"_a,
        "removal_rate_per_s"_a);

  py::class_<ReadoutParams>(m, "ReadoutParams")
      .def(py::init<>())
      .def_readwrite("scatter_rate_bright_per_s",
                     &ReadoutParams::scatter_rate_bright_per_s)
      .def_readwrite("collection_solid_angle_sr",
                     &ReadoutParams::collection_solid_angle_sr)
      .def_readwrite("quantum_efficiency", &ReadoutParams::quantum_efficiency)
      .def_readwrite("integration_time_s", &ReadoutParams::integration_time_s)
      .def_readwrite("dark_rate_per_s", &ReadoutParams::dark_rate_per_s)
      .def_readwrite("threshold_counts", &ReadoutParams::threshold_counts)
      .def_readwrite("seed", &ReadoutParams::seed);
  py::class_<ReadoutResult>(m, "ReadoutResult")
      .def_readonly("histogram", &ReadoutResult::histogram)
      .def_readonly("trials", &ReadoutResult::trials)
      .def_readonly("trials_bright", &ReadoutResult::trials_bright)
      .def_readonly("trials_dark", &ReadoutResult::trials_dark)
      .def_readonly("bright_misclassified",
                    &ReadoutResult::bright_misclassified)
      .def_readonly("dark_misclassified", &ReadoutResult::dark_misclassified)
      .def_readonly("bright_to_dark_rate", &ReadoutResult::bright_to_dark_rate)
      .def_readonly("dark_to_bright_rate", &ReadoutResult::dark_to_bright_rate)
      .def_readonly("analytic_bright_to_dark",
                    &ReadoutResult::analytic_bright_to_dark)
      .def_readonly("analytic_dark_to_bright",
                    &ReadoutResult::analytic_dark_to_bright)
      .def_readonly("bright_mean_counts", &ReadoutResult::bright_mean_counts)
      .def_readonly("dark_mean_counts", &ReadoutResult::dark_mean_counts)
      .def_readonly("threshold_warning", &ReadoutResult::threshold_warning);
  m.def("collection_efficiency", &collection_efficiency, "params"_a);
  m.def("poisson_cdf", &poisson_cdf, "k"_a, "mean"_a);
  m.def("simulate_readout", &simulate_readout, "p_bright"_a, "p_dark"_a,
        "params"_a, "trials"_a);

  py::class_<ImagingChain>(m, "ImagingChain")
      .def(py::init<>())
      .def_readwrite("magnification", &ImagingChain::magnification)
      .def_readwrite("mcp_channel_pitch_m", &ImagingChain::mcp_channel_pitch_m)
      .def_readwrite("min_channel_separation_pitches",
                     &ImagingChain::min_channel_separation_pitches);
  m.def("imaging_min_separation", &imaging_min_separation, "chain"_a);

  // --- harness ---
  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("species_name", &RunConfig::species_name)
      .def_readwrite("trap", &RunConfig::trap)
      .def_readwrite("beam", &RunConfig::beam)
      .def_readwrite("deflector", &RunConfig::deflector)
      .def_readwrite("cooling", &RunConfig::cooling)
      .def_readwrite("imaging", &RunConfig::imaging)
      .def_property(
          "seed",
          [](const RunConfig& c) { return c.seed; },
          [](RunConfig& c, std::uint64_t s) { c.seed = s; })
      .def_readwrite("output_format", &RunConfig::output_format);
  m.def("default_config", &default_config);
  m.def("parse_config", &parse_config, "text"_a);
  m.def("serialize_config", &serialize_config, "config"_a);
  m.def(
      "design_report",
      [](const RunConfig& config, const std::string& format) {
        return emit(run_design_report(config), format);
      },
      "config"_a, "format"_a = "json");
  m.def(
      "gate_demo",
      [](const RunConfig& config, const std::string& script_text,
         const std::string& format) {
        return emit(run_gate_demo(config, parse_script(script_text)), format);
      },
      "config"_a, "script_text"_a, "format"_a = "json");

  m.attr("__version__") = "0.1.0";
}
