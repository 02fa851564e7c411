#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "ionforge/species.hpp"

namespace ionforge {

struct ChainConfig {
  int n_ions = 1;
  double omega_axial_rad_s = 0.0;
  IonSpecies species;
};

struct SolverOptions {
  double tol = 1e-10;  // max dimensionless force residual
  int max_iter = 200;
};

// Axial Coulomb-chain mechanics in the dimensionless frame u = z/l where
// l = length_scale(omega_axial, species).
struct ChainModes {
  double length_scale_m = 0.0;
  std::vector<double> positions_u;            // ascending, sum = 0
  std::vector<double> positions_m;
  std::vector<double> mode_eigenvalues;       // ascending; 1 (CM), 3, ...
  std::vector<double> mode_frequencies_rad_s;
  Eigen::MatrixXd mode_vectors;               // orthonormal columns
  std::optional<double> min_spacing_m;        // empty for a single ion
};

struct LambDicke {
  double eta = 0.0;
  double wavevector_rad_m = 0.0;
  double projection_angle_rad = 0.0;
  int mode_index = 0;  // 0 = CM
  bool no_axial_coupling = false;
};

// Characteristic Coulomb length l = (charge^2/(4 pi eps0 mass omega^2))^(1/3).
double length_scale(double omega_axial_rad_s, const IonSpecies& species);

// Dimensionless equilibrium positions of n ions in a harmonic well, found by
// damped Newton iteration on the force-balance system. Throws
// ConvergenceError (with residuals) if the iteration budget runs out.
std::vector<double> equilibrium_positions(int n_ions,
                                          const SolverOptions& opts = {});

// Max |force residual| of a candidate position set.
double max_force_residual(const std::vector<double>& positions_u);

// Dimensionless Hessian of the chain potential at the given positions.
Eigen::MatrixXd axial_hessian(const std::vector<double>& positions_u);

struct ModeDecomposition {
  std::vector<double> eigenvalues;                // ascending
  std::vector<double> mode_frequencies_rad_s;
  Eigen::MatrixXd mode_vectors;
};

// Eigen-decomposition of the Hessian at equilibrium. Mode frequency is
// sqrt(eigenvalue)*omega_axial; the lowest mode is the CM mode at exactly
// omega_axial. Throws PreconditionError if the positions are not a converged
// equilibrium (residual above tol).
ModeDecomposition axial_normal_modes(const std::vector<double>& positions_u,
                                     double omega_axial_rad_s,
                                     double tol = 1e-8);

// Equilibrium + modes + spacings for a chain config.
ChainModes chain_modes(const ChainConfig& cfg, const SolverOptions& opts = {});

// Minimum adjacent gap in meters; empty for a single ion.
std::optional<double> min_spacing(const ChainConfig& cfg,
                                  const SolverOptions& opts = {});

// Lamb-Dicke parameter of the CM mode for an addressing beam of the given
// wavelength, projected onto the trap axis:
//   eta = (2 pi/lambda) cos(angle) sqrt(hbar/(2 N mass omega_axial))
// angle = pi/2 gives eta = 0 with the no_axial_coupling flag set.
LambDicke lamb_dicke_cm(const ChainConfig& cfg, double wavelength_m,
                        double projection_angle_rad);

}  // namespace ionforge
