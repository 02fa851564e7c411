#include "ionforge/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "ionforge/errors.hpp"

namespace ionforge {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& value, int line,
                    const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing");
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": value '" + value +
                          "' for key '" + key + "' is not a number",
                      line, key);
  }
}

long long parse_int(const std::string& value, int line,
                    const std::string& key) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": value '" + value +
                          "' for key '" + key + "' is not an integer",
                      line, key);
  }
}

[[noreturn]] void range_error(int line, const std::string& key,
                              const std::string& what) {
  throw ConfigError("line " + std::to_string(line) + ": key '" + key + "' " +
                        what,
                    line, key);
}

struct Setter {
  std::function<void(RunConfig&, const std::string& value, int line,
                     const std::string& key)>
      apply;
};

// One entry per accepted key; each parses and range-checks its value.
const std::map<std::string, Setter>& key_table() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;

    auto positive = [](double d) { return d > 0.0; };
    auto non_negative = [](double d) { return d >= 0.0; };

    auto add_num = [&t](const std::string& key, auto assign, auto check,
                        const char* what) {
      t[key] = Setter{[assign, check, what](RunConfig& c,
                                            const std::string& v, int line,
                                            const std::string& k) {
        const double d = parse_double(v, line, k);
        if (!check(d)) range_error(line, k, what);
        assign(c, d);
      }};
    };

    auto add_int = [&t](const std::string& key, auto assign, auto check,
                        const char* what) {
      t[key] = Setter{[assign, check, what](RunConfig& c,
                                            const std::string& v, int line,
                                            const std::string& k) {
        const long long i = parse_int(v, line, k);
        if (!check(i)) range_error(line, k, what);
        assign(c, i);
      }};
    };

    t["schema_version"] = Setter{[](RunConfig& c, const std::string& v,
                                    int line, const std::string& k) {
      const long long i = parse_int(v, line, k);
      if (i != 1) range_error(line, k, "must be 1");
      c.schema_version = 1;
    }};

    t["species.name"] = Setter{[](RunConfig& c, const std::string& v,
                                  int line, const std::string& k) {
      if (v != "Ca40") range_error(line, k, "names an unknown species");
      c.species_name = v;
    }};

    add_num("trap.v_rf", [](RunConfig& c, double d) { c.trap.v_rf_volts = d; },
            non_negative, "must be >= 0");
    add_num("trap.omega_rf",
            [](RunConfig& c, double d) { c.trap.omega_rf_rad_s = d; },
            positive, "must be positive");
    add_num("trap.r0", [](RunConfig& c, double d) { c.trap.r0_m = d; },
            positive, "must be positive");
    add_num("trap.u_dc", [](RunConfig& c, double d) { c.trap.u_dc_volts = d; },
            non_negative, "must be >= 0");
    add_num("trap.z0", [](RunConfig& c, double d) { c.trap.z0_m = d; },
            positive, "must be positive");
    add_num("trap.kappa", [](RunConfig& c, double d) { c.trap.kappa = d; },
            positive, "must be positive");
    add_num("trap.string_threshold",
            [](RunConfig& c, double d) { c.trap_string_threshold = d; },
            [](double d) { return d > 1.0; }, "must exceed 1");

    add_int("chain.n_ions",
            [](RunConfig& c, long long i) { c.chain.n_ions = int(i); },
            [](long long i) { return i >= 1 && i <= 100; },
            "must lie in [1, 100]");
    add_num("chain.tolerance",
            [](RunConfig& c, double d) { c.chain.tolerance = d; }, positive,
            "must be positive");

    add_int("gate.n_max",
            [](RunConfig& c, long long i) { c.gate.n_max = int(i); },
            [](long long i) { return i >= 1 && i <= 64; },
            "must lie in [1, 64]");
    t["gate.scheme"] = Setter{[](RunConfig& c, const std::string& v, int line,
                                 const std::string& k) {
      if (v != "single-laser" && v != "raman") {
        range_error(line, k, "must be 'single-laser' or 'raman'");
      }
      c.gate.scheme = v;
    }};
    t["gate.script"] = Setter{[](RunConfig& c, const std::string& v, int,
                                 const std::string&) {
      c.gate.script_path = v;
    }};
    add_num("gate.area_error",
            [](RunConfig& c, double d) { c.gate.area_error = d; },
            [](double d) { return std::abs(d) < 1.0; },
            "must satisfy |value| < 1");
    add_num("gate.wavelength",
            [](RunConfig& c, double d) { c.gate.wavelength_m = d; }, positive,
            "must be positive");
    add_num("gate.projection_angle",
            [](RunConfig& c, double d) { c.gate.projection_angle_rad = d; },
            [](double d) { return d >= 0.0 && d <= constants::pi / 2.0; },
            "must lie in [0, pi/2]");

    add_num("optics.spot_diameter",
            [](RunConfig& c, double d) { c.beam.spot_diameter_m = d; },
            positive, "must be positive");
    add_num("optics.wavelength",
            [](RunConfig& c, double d) { c.beam.wavelength_m = d; }, positive,
            "must be positive");
    add_num("optics.input_beam_diameter",
            [](RunConfig& c, double d) { c.beam.input_beam_diameter_m = d; },
            positive, "must be positive");
    add_num("optics.focal_length",
            [](RunConfig& c, double d) { c.beam.focal_length_m = d; },
            positive, "must be positive");
    add_num("optics.tilt_wedge",
            [](RunConfig& c, double d) { c.beam.tilt_wedge_rad = d; },
            non_negative, "must be >= 0");
    add_num("optics.max_deflection",
            [](RunConfig& c, double d) { c.deflector.max_angle_rad = d; },
            positive, "must be positive");
    add_num("optics.max_voltage",
            [](RunConfig& c, double d) { c.deflector.max_voltage_v = d; },
            positive, "must be positive");
    add_num("optics.switch_time",
            [](RunConfig& c, double d) { c.deflector.switch_time_s = d; },
            positive, "must be positive");
    add_num("optics.ion_spacing",
            [](RunConfig& c, double d) { c.optics.ion_spacing_m = d; },
            positive, "must be positive");
    add_num("optics.crosstalk_budget",
            [](RunConfig& c, double d) { c.optics.crosstalk_budget = d; },
            [](double d) { return d > 0.0 && d < 1.0; },
            "must lie in (0, 1)");
    add_num("optics.intensity_stability",
            [](RunConfig& c, double d) { c.optics.intensity_stability = d; },
            non_negative, "must be >= 0");
    add_num("optics.timing_resolution",
            [](RunConfig& c, double d) { c.optics.timing_resolution_s = d; },
            non_negative, "must be >= 0");
    add_num("optics.pulse_width",
            [](RunConfig& c, double d) { c.optics.pulse_width_s = d; },
            positive, "must be positive");

    add_num("cooling.gamma_dipole",
            [](RunConfig& c, double d) { c.cooling.gamma_dipole_rad_s = d; },
            positive, "must be positive");
    add_num("cooling.i_sat",
            [](RunConfig& c, double d) { c.cooling.i_sat_w_m2 = d; },
            positive, "must be positive");
    add_num("cooling.d_lifetime",
            [](RunConfig& c, double d) { c.cooling.d_lifetime_s = d; },
            positive, "must be positive");
    add_num("cooling.repump_factor",
            [](RunConfig& c, double d) { c.cooling.repump_factor = d; },
            [](double d) { return d >= 1.0; }, "must be >= 1");
    add_num("cooling.laser_linewidth",
            [](RunConfig& c, double d) {
              c.cooling_checks.laser_linewidth_rad_s = d;
            },
            positive, "must be positive");
    add_num("cooling.doppler_laser_linewidth",
            [](RunConfig& c, double d) {
              c.cooling_checks.doppler_laser_linewidth_rad_s = d;
            },
            positive, "must be positive");
    add_num("cooling.resolution_factor",
            [](RunConfig& c, double d) {
              c.cooling_checks.resolution_factor = d;
            },
            positive, "must be positive");

    add_num("readout.scatter_rate_bright",
            [](RunConfig& c, double d) {
              c.readout.scatter_rate_bright_per_s = d;
            },
            non_negative, "must be >= 0");
    add_num("readout.collection_solid_angle",
            [](RunConfig& c, double d) {
              c.readout.collection_solid_angle_sr = d;
            },
            [](double d) { return d > 0.0 && d <= 4.0 * constants::pi; },
            "must lie in (0, 4pi]");
    add_num("readout.quantum_efficiency",
            [](RunConfig& c, double d) { c.readout.quantum_efficiency = d; },
            [](double d) { return d >= 0.0 && d <= 1.0; },
            "must lie in [0, 1]");
    add_num("readout.integration_time",
            [](RunConfig& c, double d) { c.readout.integration_time_s = d; },
            non_negative, "must be >= 0");
    add_num("readout.dark_rate",
            [](RunConfig& c, double d) { c.readout.dark_rate_per_s = d; },
            non_negative, "must be >= 0");
    add_int("readout.threshold",
            [](RunConfig& c, long long i) {
              c.readout.threshold_counts = int(i);
            },
            [](long long i) { return i >= 0; }, "must be >= 0");
    add_num("readout.p_bright",
            [](RunConfig& c, double d) { c.readout.p_bright = d; },
            [](double d) { return d >= 0.0 && d <= 1.0; },
            "must lie in [0, 1]");
    add_int("readout.trials",
            [](RunConfig& c, long long i) { c.readout.trials = long(i); },
            [](long long i) { return i >= 1; }, "must be >= 1");

    add_num("imaging.magnification",
            [](RunConfig& c, double d) { c.imaging.magnification = d; },
            positive, "must be positive");
    add_num("imaging.mcp_channel_pitch",
            [](RunConfig& c, double d) { c.imaging.mcp_channel_pitch_m = d; },
            positive, "must be positive");
    add_int("imaging.min_channel_separation",
            [](RunConfig& c, long long i) {
              c.imaging.min_channel_separation_pitches = int(i);
            },
            [](long long i) { return i >= 1; }, "must be >= 1 pitch");
    add_num("imaging.expected_spacing",
            [](RunConfig& c, double d) { c.imaging_expected_spacing_m = d; },
            positive, "must be positive");

    t["seed"] = Setter{[](RunConfig& c, const std::string& v, int line,
                          const std::string& k) {
      try {
        std::size_t used = 0;
        const unsigned long long s = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing");
        c.seed = s;
      } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": value '" + v +
                              "' for key '" + k +
                              "' is not an unsigned integer",
                          line, k);
      }
    }};

    t["output.format"] = Setter{[](RunConfig& c, const std::string& v,
                                   int line, const std::string& k) {
      if (v != "json" && v != "csv") {
        range_error(line, k, "must be 'json' or 'csv'");
      }
      c.output_format = v;
    }};

    return t;
  }();
  return table;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

IonSpecies RunConfig::species() const { return species_by_name(species_name); }

ReadoutParams RunConfig::readout_params() const {
  if (!seed.has_value()) {
    throw ConfigError("randomized readout requires an explicit 'seed'", 0,
                      "seed");
  }
  ReadoutParams p;
  p.scatter_rate_bright_per_s = readout.scatter_rate_bright_per_s;
  p.collection_solid_angle_sr = readout.collection_solid_angle_sr;
  p.quantum_efficiency = readout.quantum_efficiency;
  p.integration_time_s = readout.integration_time_s;
  p.dark_rate_per_s = readout.dark_rate_per_s;
  p.threshold_counts = readout.threshold_counts;
  p.seed = *seed;
  return p;
}

RunConfig default_config() { return RunConfig{}; }

void validate_config(const RunConfig& config) {
  if (config.schema_version != 1) {
    throw ConfigError("schema_version must be 1", 0, "schema_version");
  }
  species_by_name(config.species_name);
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  const auto& table = key_table();

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("line " + std::to_string(line_no) +
                              ": malformed section header '" + line + "'",
                          line_no);
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("line " + std::to_string(line_no) +
                              ": empty section header",
                          line_no);
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                            ": expected 'key = value', got '" + line + "'",
                        line_no);
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": missing key",
                        line_no);
    }
    // A dotted key is absolute; a bare key picks up the current section.
    if (key.find('.') == std::string::npos && !section.empty()) {
      key = section + "." + key;
    }

    const auto it = table.find(key);
    if (it == table.end()) {
      throw ConfigError("line " + std::to_string(line_no) +
                            ": unknown key '" + key + "'",
                        line_no, key);
    }
    it->second.apply(config, value, line_no, key);
  }

  validate_config(config);
  return config;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  auto num = [&](const char* key, double v) {
    out << key << " = " << format_number(v) << "\n";
  };
  out << "schema_version = " << c.schema_version << "\n";
  if (c.seed.has_value()) out << "seed = " << *c.seed << "\n";
  out << "\n[species]\nname = " << c.species_name << "\n";

  out << "\n[trap]\n";
  num("v_rf", c.trap.v_rf_volts);
  num("omega_rf", c.trap.omega_rf_rad_s);
  num("r0", c.trap.r0_m);
  num("u_dc", c.trap.u_dc_volts);
  num("z0", c.trap.z0_m);
  num("kappa", c.trap.kappa);
  num("string_threshold", c.trap_string_threshold);

  out << "\n[chain]\n";
  out << "n_ions = " << c.chain.n_ions << "\n";
  num("tolerance", c.chain.tolerance);

  out << "\n[gate]\n";
  out << "n_max = " << c.gate.n_max << "\n";
  out << "scheme = " << c.gate.scheme << "\n";
  if (!c.gate.script_path.empty()) {
    out << "script = " << c.gate.script_path << "\n";
  }
  num("area_error", c.gate.area_error);
  num("wavelength", c.gate.wavelength_m);
  num("projection_angle", c.gate.projection_angle_rad);

  out << "\n[optics]\n";
  num("spot_diameter", c.beam.spot_diameter_m);
  num("wavelength", c.beam.wavelength_m);
  num("input_beam_diameter", c.beam.input_beam_diameter_m);
  num("focal_length", c.beam.focal_length_m);
  num("tilt_wedge", c.beam.tilt_wedge_rad);
  num("max_deflection", c.deflector.max_angle_rad);
  num("max_voltage", c.deflector.max_voltage_v);
  num("switch_time", c.deflector.switch_time_s);
  num("ion_spacing", c.optics.ion_spacing_m);
  num("crosstalk_budget", c.optics.crosstalk_budget);
  num("intensity_stability", c.optics.intensity_stability);
  num("timing_resolution", c.optics.timing_resolution_s);
  num("pulse_width", c.optics.pulse_width_s);

  out << "\n[cooling]\n";
  num("gamma_dipole", c.cooling.gamma_dipole_rad_s);
  num("i_sat", c.cooling.i_sat_w_m2);
  num("d_lifetime", c.cooling.d_lifetime_s);
  num("repump_factor", c.cooling.repump_factor);
  num("laser_linewidth", c.cooling_checks.laser_linewidth_rad_s);
  num("doppler_laser_linewidth",
      c.cooling_checks.doppler_laser_linewidth_rad_s);
  num("resolution_factor", c.cooling_checks.resolution_factor);

  out << "\n[readout]\n";
  num("scatter_rate_bright", c.readout.scatter_rate_bright_per_s);
  num("collection_solid_angle", c.readout.collection_solid_angle_sr);
  num("quantum_efficiency", c.readout.quantum_efficiency);
  num("integration_time", c.readout.integration_time_s);
  num("dark_rate", c.readout.dark_rate_per_s);
  out << "threshold = " << c.readout.threshold_counts << "\n";
  num("p_bright", c.readout.p_bright);
  out << "trials = " << c.readout.trials << "\n";

  out << "\n[imaging]\n";
  num("magnification", c.imaging.magnification);
  num("mcp_channel_pitch", c.imaging.mcp_channel_pitch_m);
  out << "min_channel_separation = "
      << c.imaging.min_channel_separation_pitches << "\n";
  num("expected_spacing", c.imaging_expected_spacing_m);

  out << "\n[output]\nformat = " << c.output_format << "\n";
  return out.str();
}

}  // namespace ionforge
