#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ionforge/dynamics.hpp"

namespace ionforge {

// Line-oriented gate script. Header directives:
//   ions N        register size (default 1)
//   nmax M        phonon truncation (default 3)
//   init |KET>    initial basis state (default all ions |0>, phonon 0)
//   expect |KET>  optional reference state for the fidelity entry
// then one pulse per line:
//   V|U ion theta phi transition sideband
// with transition in {01, 0aux} and sideband in {-1, 0, +1}. `#` comments.
struct GateScript {
  int n_ions = 1;
  int n_max = 3;
  std::string init_ket = "|0;0>";
  std::optional<std::string> expect_ket;
  std::vector<PulseSpec> pulses;
};

// Throws ConfigError with the line number on malformed input.
GateScript parse_script(const std::string& text);

// Canonical text for a pulse sequence (used for the bundled gate scripts).
std::string render_script(const GateScript& script);

}  // namespace ionforge
