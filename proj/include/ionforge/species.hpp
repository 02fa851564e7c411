#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ionforge {

// One optical transition; lifetime is that of the upper state.
struct Transition {
  std::string label;
  double wavelength_m = 0.0;
  double lifetime_s = 0.0;
};

struct IonSpecies {
  std::string name;
  double mass_kg = 0.0;
  double charge_c = 0.0;
  std::vector<Transition> transitions;

  // Throws DomainError if the label is not in the catalog.
  const Transition& transition(std::string_view label) const;
};

// 40Ca+ level catalog: dipole cooling/readout line at 397 nm, quadrupole
// sideband-cooling line at 732 nm, repump at 866 nm and the 729 nm-class
// computation transition to D5/2. Nominal isotope mass (40 u).
IonSpecies ca40();

// Resolve a species by config name ("Ca40"). Throws DomainError if unknown.
IonSpecies species_by_name(std::string_view name);

// Internal levels used by the coherent engine.
enum class Scheme { SingleLaser, Raman };

struct QubitAssignment {
  std::string zero;
  std::string one;
  std::string aux;
  Scheme scheme = Scheme::SingleLaser;
  double zeeman_field_t = 0.0;          // applied bias field, tesla
  double zeeman_splitting_rad_s = 0.0;  // ground-state qubit splitting
};

// Level assignment for the two addressing schemes. The Raman variant keeps
// the qubit in the S1/2 Zeeman doublet split by a 200 G field and borrows a
// D5/2 sublevel as the auxiliary state.
QubitAssignment qubit_assignment(Scheme scheme);

}  // namespace ionforge
