#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ionforge/errors.hpp"
#include "ionforge/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPhysics = 3;
constexpr int kExitConvergence = 4;

struct CliOptions {
  std::string config_path;
  std::string format;
  std::string out_path;
  std::string script_path;
  std::optional<std::uint64_t> seed;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ionforge::ConfigError("cannot open file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ionforge::RunConfig load_config(const CliOptions& opts) {
  std::string path = opts.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("IONFORGE_CONFIG")) path = env;
  }
  ionforge::RunConfig config =
      path.empty() ? ionforge::default_config()
                   : ionforge::parse_config(read_file(path));
  if (opts.seed.has_value()) config.seed = *opts.seed;
  if (!opts.format.empty()) config.output_format = opts.format;
  return config;
}

void write_output(const std::string& bytes, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw ionforge::ConfigError("cannot write to '" + out_path + "'");
  }
  out << bytes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ionforge: design toolkit for a cold-trapped-ion quantum computer"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --config/--seed/... after the subcommand

  CliOptions opts;
  app.add_option("--config", opts.config_path,
                 "config file (flat key=value; IONFORGE_CONFIG is the "
                 "fallback)");
  app.add_option("--format", opts.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", opts.seed, "seed for randomized sections");
  app.add_option("--out", opts.out_path, "write output here (default stdout)");

  auto* cmd_trap = app.add_subcommand("trap", "secular frequencies and "
                                              "stability");
  auto* cmd_chain = app.add_subcommand("chain", "equilibrium positions and "
                                                "normal modes");
  auto* cmd_gate = app.add_subcommand("gate", "run a pulse script");
  cmd_gate->add_option("--script", opts.script_path,
                       "pulse script (overrides gate.script)");
  auto* cmd_optics = app.add_subcommand("optics", "addressing budgets");
  auto* cmd_cooling = app.add_subcommand("cooling", "cooling budgets and "
                                                    "sideband spectrum");
  auto* cmd_readout = app.add_subcommand("readout",
                                         "quantum-jump readout Monte Carlo");
  auto* cmd_report = app.add_subcommand("report", "full design report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const auto config = load_config(opts);
    ionforge::Report report;
    if (cmd_trap->parsed()) {
      report = ionforge::trap_report(config);
    } else if (cmd_chain->parsed()) {
      report = ionforge::chain_report(config);
    } else if (cmd_gate->parsed()) {
      std::string script_path = !opts.script_path.empty()
                                    ? opts.script_path
                                    : config.gate.script_path;
      if (script_path.empty()) {
        throw ionforge::ConfigError(
            "gate needs a script: pass --script or set gate.script");
      }
      const auto script = ionforge::parse_script(read_file(script_path));
      report = ionforge::run_gate_demo(config, script);
    } else if (cmd_optics->parsed()) {
      report = ionforge::optics_report(config);
    } else if (cmd_cooling->parsed()) {
      report = ionforge::cooling_report(config);
    } else if (cmd_readout->parsed()) {
      report = ionforge::readout_report(config);
    } else if (cmd_report->parsed()) {
      report = ionforge::run_design_report(config);
    }
    write_output(ionforge::emit(report, config.output_format), opts.out_path);
    return kExitOk;
  } catch (const ionforge::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ionforge::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const ionforge::PreconditionError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return kExitPhysics;
  } catch (const ionforge::DomainError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return kExitPhysics;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
