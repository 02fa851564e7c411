#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "ionforge/chain.hpp"
#include "ionforge/species.hpp"

namespace ionforge {

// Internal levels of one ion. Ground doubles as the bright readout state.
enum class Level : int { Ground = 0, Excited = 1, Aux = 2 };

// Which two-level manifold a pulse drives.
enum class TransitionPair { GroundExcited, GroundAux };

enum class PulseKind { V, U };

// One laser pulse. theta is the rotation angle; for U pulses it is anchored
// to the n=1 <-> n=0 phonon pair, higher manifolds rotate by theta*sqrt(n).
struct PulseSpec {
  PulseKind kind = PulseKind::V;
  int ion = 0;
  double theta = 0.0;  // >= 0
  double phi = 0.0;    // optical phase
  TransitionPair transition = TransitionPair::GroundExcited;
  int sideband = 0;    // -1 red, +1 blue; must be 0 for V pulses
};

// Raman drive: only the pump-Stokes phase difference enters the dynamics.
PulseSpec raman_pulse(PulseKind kind, int ion, double theta,
                      double pump_phase, double stokes_phase,
                      TransitionPair transition = TransitionPair::GroundExcited,
                      int sideband = 0);

// theta scaled by (1 + fractional_error); |fractional_error| < 1.
PulseSpec pulse_area_perturbation(const PulseSpec& pulse,
                                  double fractional_error);

// State vector of n_ions three-level ions coupled to one truncated phonon
// mode. Basis index = (sum_i level_i * 3^(n_ions-1-i)) * (n_max+1) + n,
// i.e. ion-major with the phonon number least significant.
class RegisterState {
 public:
  RegisterState(int n_ions, int n_max);  // |00...0> (x) |n=0>

  static RegisterState basis_state(int n_ions, int n_max,
                                   const std::vector<Level>& levels,
                                   int phonon);
  // Ket syntax "|10a;0>" (or bare "10a;0"): one character per ion from
  // {0,1,a}, then ';' and the phonon number.
  static RegisterState from_ket(int n_ions, int n_max, std::string_view ket);

  int n_ions() const { return n_ions_; }
  int n_max() const { return n_max_; }
  Eigen::Index dim() const { return amps_.size(); }

  Eigen::Index index(const std::vector<Level>& levels, int phonon) const;
  std::complex<double> amplitude(const std::vector<Level>& levels,
                                 int phonon) const;
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }

  double norm() const { return amps_.norm(); }
  // Marginal phonon-number distribution.
  std::vector<double> phonon_distribution() const;
  // Total population at phonon numbers > 0.
  double phonon_excited_population() const;
  // Largest |amplitude| carried by any phonon number > 0.
  double excited_phonon_max_amplitude() const;
  // Largest |amplitude| in the n = n_max layer (truncation guard).
  double top_layer_max_amplitude() const;
  // Largest |amplitude| at n = n_max with the given ion in the given level.
  double boundary_amplitude(int ion, Level level) const;
  // Human-readable label of a basis index, e.g. "|10;0>".
  std::string basis_label(Eigen::Index index) const;

 private:
  int n_ions_;
  int n_max_;
  Eigen::VectorXcd amps_;
};

// Carrier pulse: rotates the addressed two-level manifold of one ion,
// identically for every phonon number.
RegisterState apply_v_pulse(const RegisterState& state, const PulseSpec& pulse);

// Sideband pulse: red (-1) couples |lower,n> <-> |upper,n-1>, blue (+1)
// couples |lower,n> <-> |upper,n+1>, with sqrt(n) angle scaling. Requires a
// usable Lamb-Dicke coupling and negligible population at n = n_max.
RegisterState apply_u_pulse(const RegisterState& state, const PulseSpec& pulse,
                            const LambDicke& eta);

// Dispatch on pulse.kind.
RegisterState apply_pulse(const RegisterState& state, const PulseSpec& pulse,
                          const LambDicke& eta);

// Pulse sequences for the phonon-bus controlled gates (control/target are
// ion indices). The controlled-Z is the three-pulse construction through the
// auxiliary level; the CNOT wraps it in target-ion carrier rotations.
std::vector<PulseSpec> controlled_z_sequence(int control, int target);
std::vector<PulseSpec> cnot_sequence(int control, int target);

// Apply the gates. Preconditions: phonon bus in |0> (population above
// n = 0 below 1e-9 in amplitude), distinct in-range ion indices.
RegisterState controlled_z(const RegisterState& state, int control, int target,
                           const LambDicke& eta);
RegisterState cnot(const RegisterState& state, int control, int target,
                   const LambDicke& eta);

// |<a|b>|^2; dimensions must match.
double fidelity(const RegisterState& a, const RegisterState& b);

}  // namespace ionforge
