#include "ionforge/species.hpp"

#include <cmath>

#include "ionforge/constants.hpp"
#include "ionforge/errors.hpp"

namespace ionforge {

namespace {

// Lande g factor of the Ca+ ground state (4s 2S1/2).
constexpr double kCaGroundLandeG = 2.00225664;

// Natural lifetime matching the assumed 2pi*20.7 MHz dipole linewidth.
constexpr double kP12LifetimeS = 7.7e-9;

}  // namespace

const Transition& IonSpecies::transition(std::string_view label) const {
  for (const auto& t : transitions) {
    if (t.label == label) return t;
  }
  throw DomainError("species '" + name + "' has no transition '" +
                    std::string(label) + "'");
}

IonSpecies ca40() {
  IonSpecies s;
  s.name = "Ca40";
  s.mass_kg = 40.0 * constants::atomic_mass_kg;
  s.charge_c = constants::elementary_charge_c;
  s.transitions = {
      {"S1/2-P1/2", 397e-9, kP12LifetimeS},   // Doppler cooling, readout
      {"S1/2-D3/2", 732e-9, 1.08},            // sideband cooling
      {"D3/2-P1/2", 866e-9, kP12LifetimeS},   // repump
      {"S1/2-D5/2", 729e-9, 1.05},            // computation transition
  };
  return s;
}

IonSpecies species_by_name(std::string_view name) {
  if (name == "Ca40") return ca40();
  throw DomainError("unknown species '" + std::string(name) + "'");
}

QubitAssignment qubit_assignment(Scheme scheme) {
  QubitAssignment a;
  a.scheme = scheme;
  if (scheme == Scheme::SingleLaser) {
    a.zero = "4S1/2 mJ=+1/2";
    a.one = "3D5/2 mJ=+3/2";
    a.aux = "3D5/2 mJ=-1/2";
    return a;
  }
  // Raman variant: qubit in the ground-state Zeeman doublet; there is no
  // third ground sublevel in 40Ca+, so the auxiliary state falls back on the
  // D5/2 manifold.
  a.zero = "4S1/2 mJ=-1/2";
  a.one = "4S1/2 mJ=+1/2";
  a.aux = "3D5/2 mJ=-1/2";
  a.zeeman_field_t = 0.02;  // 200 Gauss
  a.zeeman_splitting_rad_s = kCaGroundLandeG * constants::bohr_magneton_j_t *
                             a.zeeman_field_t / constants::hbar_j_s;
  return a;
}

}  // namespace ionforge
