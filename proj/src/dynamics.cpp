#include "ionforge/dynamics.hpp"

#include <cmath>

#include "ionforge/constants.hpp"
#include "ionforge/errors.hpp"

namespace ionforge {

namespace {

constexpr double kPhononGroundTol = 1e-9;
constexpr double kTruncationTol = 1e-9;

using complexd = std::complex<double>;

Level upper_level(TransitionPair t) {
  return t == TransitionPair::GroundExcited ? Level::Excited : Level::Aux;
}

void validate_pulse(const PulseSpec& pulse, int n_ions) {
  if (pulse.ion < 0 || pulse.ion >= n_ions) {
    throw DomainError("pulse ion index " + std::to_string(pulse.ion) +
                      " out of range for " + std::to_string(n_ions) +
                      " ions");
  }
  if (pulse.theta < 0.0) throw DomainError("pulse theta must be >= 0");
  if (pulse.kind == PulseKind::V && pulse.sideband != 0) {
    throw DomainError("V pulse must have sideband 0");
  }
  if (pulse.kind == PulseKind::U && pulse.sideband != -1 &&
      pulse.sideband != 1) {
    throw DomainError("U pulse sideband must be -1 or +1");
  }
}

Eigen::Index ion_stride(int n_ions, int n_max, int ion) {
  Eigen::Index s = n_max + 1;
  for (int i = 0; i < n_ions - 1 - ion; ++i) s *= 3;
  return s;
}

// In-place rotation of the (lower, upper) amplitude pair:
//   a_lo' = cos(theta/2) a_lo - i e^{+i phi} sin(theta/2) a_up
//   a_up' = -i e^{-i phi} sin(theta/2) a_lo + cos(theta/2) a_up
void rotate_pair(complexd& lo, complexd& up, double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const complexd phase(std::cos(phi), std::sin(phi));
  const complexd mi(0.0, -1.0);
  const complexd lo_new = c * lo + mi * phase * s * up;
  const complexd up_new = mi * std::conj(phase) * s * lo + c * up;
  lo = lo_new;
  up = up_new;
}

}  // namespace

PulseSpec raman_pulse(PulseKind kind, int ion, double theta, double pump_phase,
                      double stokes_phase, TransitionPair transition,
                      int sideband) {
  PulseSpec p;
  p.kind = kind;
  p.ion = ion;
  p.theta = theta;
  p.phi = pump_phase - stokes_phase;
  p.transition = transition;
  p.sideband = sideband;
  return p;
}

PulseSpec pulse_area_perturbation(const PulseSpec& pulse,
                                  double fractional_error) {
  if (std::abs(fractional_error) >= 1.0) {
    throw DomainError("|fractional area error| must be < 1");
  }
  PulseSpec out = pulse;
  out.theta = pulse.theta * (1.0 + fractional_error);
  return out;
}

RegisterState::RegisterState(int n_ions, int n_max)
    : n_ions_(n_ions), n_max_(n_max) {
  if (n_ions < 1) throw DomainError("n_ions must be >= 1");
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  Eigen::Index dim = n_max + 1;
  for (int i = 0; i < n_ions; ++i) dim *= 3;
  amps_ = Eigen::VectorXcd::Zero(dim);
  amps_[0] = 1.0;
}

Eigen::Index RegisterState::index(const std::vector<Level>& levels,
                                  int phonon) const {
  if (static_cast<int>(levels.size()) != n_ions_) {
    throw DomainError("level list size does not match ion count");
  }
  if (phonon < 0 || phonon > n_max_) {
    throw DomainError("phonon number out of range");
  }
  Eigen::Index idx = 0;
  for (const Level l : levels) idx = idx * 3 + static_cast<int>(l);
  return idx * (n_max_ + 1) + phonon;
}

std::complex<double> RegisterState::amplitude(const std::vector<Level>& levels,
                                              int phonon) const {
  return amps_[index(levels, phonon)];
}

RegisterState RegisterState::basis_state(int n_ions, int n_max,
                                         const std::vector<Level>& levels,
                                         int phonon) {
  RegisterState s(n_ions, n_max);
  s.amps_.setZero();
  s.amps_[s.index(levels, phonon)] = 1.0;
  return s;
}

RegisterState RegisterState::from_ket(int n_ions, int n_max,
                                      std::string_view ket) {
  std::string body(ket);
  if (!body.empty() && body.front() == '|') body.erase(0, 1);
  if (!body.empty() && body.back() == '>') body.pop_back();
  const auto sep = body.find(';');
  if (sep == std::string::npos) {
    throw DomainError("ket '" + std::string(ket) +
                      "' missing ';' phonon separator");
  }
  const std::string levels_str = body.substr(0, sep);
  const std::string phonon_str = body.substr(sep + 1);
  if (static_cast<int>(levels_str.size()) != n_ions) {
    throw DomainError("ket '" + std::string(ket) + "' lists " +
                      std::to_string(levels_str.size()) + " ions, expected " +
                      std::to_string(n_ions));
  }
  std::vector<Level> levels;
  levels.reserve(levels_str.size());
  for (char c : levels_str) {
    switch (c) {
      case '0': levels.push_back(Level::Ground); break;
      case '1': levels.push_back(Level::Excited); break;
      case 'a': levels.push_back(Level::Aux); break;
      default:
        throw DomainError(std::string("ket level character '") + c +
                          "' is not one of {0,1,a}");
    }
  }
  int phonon = 0;
  try {
    std::size_t used = 0;
    phonon = std::stoi(phonon_str, &used);
    if (used != phonon_str.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw DomainError("ket phonon field '" + phonon_str +
                      "' is not an integer");
  }
  return basis_state(n_ions, n_max, levels, phonon);
}

std::vector<double> RegisterState::phonon_distribution() const {
  std::vector<double> dist(n_max_ + 1, 0.0);
  const Eigen::Index layers = amps_.size() / (n_max_ + 1);
  for (Eigen::Index block = 0; block < layers; ++block) {
    for (int n = 0; n <= n_max_; ++n) {
      dist[n] += std::norm(amps_[block * (n_max_ + 1) + n]);
    }
  }
  return dist;
}

double RegisterState::phonon_excited_population() const {
  const auto dist = phonon_distribution();
  double p = 0.0;
  for (std::size_t n = 1; n < dist.size(); ++n) p += dist[n];
  return p;
}

double RegisterState::excited_phonon_max_amplitude() const {
  double m = 0.0;
  const Eigen::Index stride = n_max_ + 1;
  for (Eigen::Index block = 0; block < amps_.size(); block += stride) {
    for (Eigen::Index n = 1; n <= n_max_; ++n) {
      m = std::max(m, std::abs(amps_[block + n]));
    }
  }
  return m;
}

double RegisterState::top_layer_max_amplitude() const {
  double m = 0.0;
  const Eigen::Index stride = n_max_ + 1;
  for (Eigen::Index i = n_max_; i < amps_.size(); i += stride) {
    m = std::max(m, std::abs(amps_[i]));
  }
  return m;
}

double RegisterState::boundary_amplitude(int ion, Level level) const {
  const Eigen::Index stride = ion_stride(n_ions_, n_max_, ion);
  double m = 0.0;
  for (Eigen::Index i = n_max_; i < amps_.size(); i += n_max_ + 1) {
    if (static_cast<int>((i / stride) % 3) != static_cast<int>(level)) {
      continue;
    }
    m = std::max(m, std::abs(amps_[i]));
  }
  return m;
}

std::string RegisterState::basis_label(Eigen::Index index) const {
  const int phonon = static_cast<int>(index % (n_max_ + 1));
  Eigen::Index block = index / (n_max_ + 1);
  std::string levels(n_ions_, '?');
  for (int i = n_ions_ - 1; i >= 0; --i) {
    const int l = static_cast<int>(block % 3);
    levels[i] = l == 0 ? '0' : (l == 1 ? '1' : 'a');
    block /= 3;
  }
  return "|" + levels + ";" + std::to_string(phonon) + ">";
}

RegisterState apply_v_pulse(const RegisterState& state,
                            const PulseSpec& pulse) {
  validate_pulse(pulse, state.n_ions());
  if (pulse.kind != PulseKind::V) throw DomainError("expected a V pulse");

  RegisterState out = state;
  auto& a = out.amplitudes();
  const Eigen::Index stride =
      ion_stride(state.n_ions(), state.n_max(), pulse.ion);
  const int lower = static_cast<int>(Level::Ground);
  const int upper = static_cast<int>(upper_level(pulse.transition));

  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const int level = static_cast<int>((i / stride) % 3);
    if (level != lower) continue;
    const Eigen::Index partner = i + (upper - lower) * stride;
    rotate_pair(a[i], a[partner], pulse.theta, pulse.phi);
  }
  return out;
}

RegisterState apply_u_pulse(const RegisterState& state, const PulseSpec& pulse,
                            const LambDicke& eta) {
  validate_pulse(pulse, state.n_ions());
  if (pulse.kind != PulseKind::U) throw DomainError("expected a U pulse");
  if (!(eta.eta > 0.0) || eta.no_axial_coupling) {
    throw DomainError("sideband pulse needs a non-zero Lamb-Dicke coupling");
  }
  // Truncation guard. The only states this pulse would couple past n_max
  // are, at n = n_max, the upper level for a red sideband and the lower
  // level for a blue one; amplitude there means the truncated evolution
  // would be wrong, so refuse. (A populated top layer is otherwise fine:
  // every other pair closes inside the space.)
  {
    const Level edge = pulse.sideband == -1 ? upper_level(pulse.transition)
                                            : Level::Ground;
    const double leak =
        state.boundary_amplitude(pulse.ion, edge);
    if (leak >= kTruncationTol) {
      throw TruncationError(
          "population at the phonon truncation boundary n_max=" +
          std::to_string(state.n_max()) +
          " would couple out of the space (amplitude " +
          std::to_string(leak) + ")");
    }
  }

  RegisterState out = state;
  auto& a = out.amplitudes();
  const int n_max = state.n_max();
  const int phonon_dim = n_max + 1;
  const Eigen::Index stride =
      ion_stride(state.n_ions(), state.n_max(), pulse.ion);
  const int lower = static_cast<int>(Level::Ground);
  const int upper = static_cast<int>(upper_level(pulse.transition));
  const Eigen::Index dlevel = (upper - lower) * stride;

  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const int level = static_cast<int>((i / stride) % 3);
    if (level != lower) continue;
    const int n = static_cast<int>(i % phonon_dim);
    if (pulse.sideband == -1) {
      // |lower,n> <-> |upper,n-1>, angle theta*sqrt(n); vacuum untouched.
      if (n == 0) continue;
      const Eigen::Index partner = i + dlevel - 1;
      rotate_pair(a[i], a[partner], pulse.theta * std::sqrt(double(n)),
                  pulse.phi);
    } else {
      // |lower,n> <-> |upper,n+1>, angle theta*sqrt(n+1).
      if (n == n_max) continue;  // guarded layer
      const Eigen::Index partner = i + dlevel + 1;
      rotate_pair(a[i], a[partner], pulse.theta * std::sqrt(double(n + 1)),
                  pulse.phi);
    }
  }
  return out;
}

RegisterState apply_pulse(const RegisterState& state, const PulseSpec& pulse,
                          const LambDicke& eta) {
  return pulse.kind == PulseKind::V ? apply_v_pulse(state, pulse)
                                    : apply_u_pulse(state, pulse, eta);
}

std::vector<PulseSpec> controlled_z_sequence(int control, int target) {
  const double pi = constants::pi;
  return {
      {PulseKind::U, control, pi, 0.0, TransitionPair::GroundExcited, -1},
      {PulseKind::U, target, 2.0 * pi, 0.0, TransitionPair::GroundAux, -1},
      {PulseKind::U, control, pi, 0.0, TransitionPair::GroundExcited, -1},
  };
}

std::vector<PulseSpec> cnot_sequence(int control, int target) {
  const double pi = constants::pi;
  std::vector<PulseSpec> seq;
  seq.push_back({PulseKind::V, target, 0.5 * pi, 0.5 * pi,
                 TransitionPair::GroundExcited, 0});
  for (auto& p : controlled_z_sequence(control, target)) seq.push_back(p);
  seq.push_back({PulseKind::V, target, 0.5 * pi, 1.5 * pi,
                 TransitionPair::GroundExcited, 0});
  return seq;
}

namespace {

RegisterState run_gate(const RegisterState& state,
                       const std::vector<PulseSpec>& seq, int control,
                       int target, const LambDicke& eta) {
  if (control == target) {
    throw DomainError("control and target must be distinct ions");
  }
  if (state.excited_phonon_max_amplitude() > kPhononGroundTol) {
    throw PreconditionError(
        "phonon bus must start in |0>: amplitude above the ground layer is " +
        std::to_string(state.excited_phonon_max_amplitude()));
  }
  RegisterState out = state;
  for (const auto& pulse : seq) out = apply_pulse(out, pulse, eta);
  return out;
}

}  // namespace

RegisterState controlled_z(const RegisterState& state, int control, int target,
                           const LambDicke& eta) {
  return run_gate(state, controlled_z_sequence(control, target), control,
                  target, eta);
}

RegisterState cnot(const RegisterState& state, int control, int target,
                   const LambDicke& eta) {
  return run_gate(state, cnot_sequence(control, target), control, target,
                  eta);
}

double fidelity(const RegisterState& a, const RegisterState& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("fidelity: state dimensions differ");
  }
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace ionforge
