#include "ionforge/script.hpp"

#include <sstream>

#include "ionforge/errors.hpp"
#include "ionforge/report.hpp"

namespace ionforge {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("script line " + std::to_string(line) + ": " + what,
                    line);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

double to_double(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(line, "'" + s + "' is not a number");
  }
}

int to_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(line, "'" + s + "' is not an integer");
  }
}

}  // namespace

GateScript parse_script(const std::string& text) {
  GateScript script;
  bool ions_set = false;
  bool init_set = false;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const auto tokens = tokenize(raw);
    if (tokens.empty()) continue;
    const std::string& head = tokens[0];

    if (head == "ions") {
      if (tokens.size() != 2) fail(line_no, "usage: ions N");
      script.n_ions = to_int(tokens[1], line_no);
      if (script.n_ions < 1) fail(line_no, "ion count must be >= 1");
      ions_set = true;
      continue;
    }
    if (head == "nmax") {
      if (tokens.size() != 2) fail(line_no, "usage: nmax M");
      script.n_max = to_int(tokens[1], line_no);
      if (script.n_max < 1) fail(line_no, "nmax must be >= 1");
      continue;
    }
    if (head == "init" || head == "expect") {
      if (tokens.size() != 2) fail(line_no, "usage: " + head + " |KET>");
      if (head == "init") {
        script.init_ket = tokens[1];
        init_set = true;
      } else {
        script.expect_ket = tokens[1];
      }
      continue;
    }

    if (head != "V" && head != "U") {
      fail(line_no, "expected a directive or pulse line, got '" + head + "'");
    }
    if (tokens.size() != 6) {
      fail(line_no, "pulse line needs: V|U ion theta phi transition sideband");
    }
    PulseSpec pulse;
    pulse.kind = head == "V" ? PulseKind::V : PulseKind::U;
    pulse.ion = to_int(tokens[1], line_no);
    pulse.theta = to_double(tokens[2], line_no);
    pulse.phi = to_double(tokens[3], line_no);
    if (tokens[4] == "01") {
      pulse.transition = TransitionPair::GroundExcited;
    } else if (tokens[4] == "0aux") {
      pulse.transition = TransitionPair::GroundAux;
    } else {
      fail(line_no, "transition must be 01 or 0aux, got '" + tokens[4] + "'");
    }
    pulse.sideband = to_int(tokens[5], line_no);
    if (pulse.sideband < -1 || pulse.sideband > 1) {
      fail(line_no, "sideband must be -1, 0 or +1");
    }
    if (pulse.kind == PulseKind::V && pulse.sideband != 0) {
      fail(line_no, "V pulse must have sideband 0");
    }
    if (pulse.kind == PulseKind::U && pulse.sideband == 0) {
      fail(line_no, "U pulse must have sideband -1 or +1");
    }
    if (pulse.theta < 0.0) fail(line_no, "theta must be >= 0");
    if (pulse.ion < 0 || pulse.ion >= script.n_ions) {
      fail(line_no, "ion index out of range");
    }
    script.pulses.push_back(pulse);
  }

  // A default one-ion |0;0> register backs headerless (possibly empty)
  // scripts.
  if (!init_set && ions_set) {
    script.init_ket = "|" + std::string(script.n_ions, '0') + ";0>";
  }
  return script;
}

std::string render_script(const GateScript& script) {
  std::ostringstream out;
  out << "ions " << script.n_ions << "\n";
  out << "nmax " << script.n_max << "\n";
  out << "init " << script.init_ket << "\n";
  if (script.expect_ket) out << "expect " << *script.expect_ket << "\n";
  for (const auto& p : script.pulses) {
    out << (p.kind == PulseKind::V ? "V" : "U") << " " << p.ion << " "
        << format_number(p.theta) << " " << format_number(p.phi) << " "
        << (p.transition == TransitionPair::GroundExcited ? "01" : "0aux")
        << " " << p.sideband << "\n";
  }
  return out.str();
}

}  // namespace ionforge
