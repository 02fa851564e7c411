#include "ionforge/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ionforge/constants.hpp"
#include "ionforge/errors.hpp"

namespace ionforge {

namespace {

// Gradient of the dimensionless potential sum(u^2)/2 + sum_{i<j} 1/|ui-uj|.
Eigen::VectorXd force_residuals(const Eigen::VectorXd& u) {
  const Eigen::Index n = u.size();
  Eigen::VectorXd g = u;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = u[i] - u[j];
      g[i] -= (d > 0.0 ? 1.0 : -1.0) / (d * d);
    }
  }
  return g;
}

bool strictly_increasing(const Eigen::VectorXd& u) {
  for (Eigen::Index i = 1; i < u.size(); ++i) {
    if (!(u[i] > u[i - 1])) return false;
  }
  return true;
}

Eigen::MatrixXd hessian(const Eigen::VectorXd& u) {
  const Eigen::Index n = u.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double diag = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = std::abs(u[i] - u[j]);
      const double c = 2.0 / (d * d * d);
      diag += c;
      a(i, j) = -c;
    }
    a(i, i) = diag;
  }
  return a;
}

// Deterministic sign convention so mode vectors are reproducible: make the
// largest-magnitude component positive.
void fix_column_signs(Eigen::MatrixXd& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index imax = 0;
    v.col(c).cwiseAbs().maxCoeff(&imax);
    if (v(imax, c) < 0.0) v.col(c) = -v.col(c);
  }
}

}  // namespace

double length_scale(double omega_axial_rad_s, const IonSpecies& species) {
  if (!(omega_axial_rad_s > 0.0)) {
    throw DomainError("omega_axial must be positive");
  }
  if (!(species.mass_kg > 0.0) || !(species.charge_c > 0.0)) {
    throw DomainError("species mass and charge must be positive");
  }
  const double q2k = species.charge_c * species.charge_c *
                     constants::coulomb_n_m2_c2;
  return std::cbrt(q2k / (species.mass_kg * omega_axial_rad_s *
                          omega_axial_rad_s));
}

double max_force_residual(const std::vector<double>& positions_u) {
  Eigen::VectorXd u =
      Eigen::Map<const Eigen::VectorXd>(positions_u.data(),
                                        static_cast<Eigen::Index>(
                                            positions_u.size()));
  return force_residuals(u).cwiseAbs().maxCoeff();
}

std::vector<double> equilibrium_positions(int n_ions,
                                          const SolverOptions& opts) {
  if (n_ions < 1) throw DomainError("n_ions must be >= 1");
  if (!(opts.tol > 0.0)) throw DomainError("solver tol must be positive");
  if (n_ions == 1) return {0.0};

  const Eigen::Index n = n_ions;
  // Uniform starting grid spanning +-0.5*N^0.9.
  const double half_span = 0.5 * std::pow(double(n_ions), 0.9);
  Eigen::VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    u[i] = -half_span + 2.0 * half_span * double(i) / double(n - 1);
  }

  Eigen::VectorXd g = force_residuals(u);
  double gnorm = g.cwiseAbs().maxCoeff();
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    if (gnorm < opts.tol) {
      u.array() -= u.mean();  // pin the CM at the trap center
      return {u.data(), u.data() + n};
    }
    const Eigen::VectorXd step = hessian(u).ldlt().solve(-g);
    // Backtrack until the residual shrinks and the ordering survives.
    double alpha = 1.0;
    bool moved = false;
    while (alpha > 1e-12) {
      Eigen::VectorXd trial = u + alpha * step;
      if (strictly_increasing(trial)) {
        Eigen::VectorXd gt = force_residuals(trial);
        const double gtnorm = gt.cwiseAbs().maxCoeff();
        if (gtnorm < gnorm) {
          u = std::move(trial);
          g = std::move(gt);
          gnorm = gtnorm;
          moved = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!moved) {
      // Newton stalled; fall back to a damped gradient step.
      double rate = 0.1;
      while (rate > 1e-14) {
        Eigen::VectorXd trial = u - rate * g;
        if (strictly_increasing(trial)) {
          Eigen::VectorXd gt = force_residuals(trial);
          const double gtnorm = gt.cwiseAbs().maxCoeff();
          if (gtnorm < gnorm) {
            u = std::move(trial);
            g = std::move(gt);
            gnorm = gtnorm;
            moved = true;
            break;
          }
        }
        rate *= 0.5;
      }
    }
    if (!moved) break;
  }
  if (gnorm < opts.tol) {
    u.array() -= u.mean();
    return {u.data(), u.data() + n};
  }
  throw ConvergenceError(
      "equilibrium solver did not reach tolerance " +
          std::to_string(opts.tol) + " within " +
          std::to_string(opts.max_iter) + " iterations",
      {g.data(), g.data() + n});
}

Eigen::MatrixXd axial_hessian(const std::vector<double>& positions_u) {
  Eigen::VectorXd u =
      Eigen::Map<const Eigen::VectorXd>(positions_u.data(),
                                        static_cast<Eigen::Index>(
                                            positions_u.size()));
  return hessian(u);
}

ModeDecomposition axial_normal_modes(const std::vector<double>& positions_u,
                                     double omega_axial_rad_s,
                                     double tol) {
  if (positions_u.empty()) throw DomainError("empty position set");
  if (!(omega_axial_rad_s > 0.0)) {
    throw DomainError("omega_axial must be positive");
  }
  if (positions_u.size() > 1 && max_force_residual(positions_u) > tol) {
    throw PreconditionError(
        "positions are not a converged equilibrium (residual above " +
        std::to_string(tol) + ")");
  }

  ModeDecomposition out;
  const Eigen::Index n = static_cast<Eigen::Index>(positions_u.size());
  if (n == 1) {
    out.eigenvalues = {1.0};
    out.mode_frequencies_rad_s = {omega_axial_rad_s};
    out.mode_vectors = Eigen::MatrixXd::Ones(1, 1);
    return out;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      axial_hessian(positions_u));
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("Hessian eigensolver failed", {});
  }
  Eigen::VectorXd vals = es.eigenvalues();  // ascending
  Eigen::MatrixXd vecs = es.eigenvectors();
  fix_column_signs(vecs);

  out.eigenvalues.assign(vals.data(), vals.data() + n);
  out.mode_frequencies_rad_s.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.mode_frequencies_rad_s[k] =
        std::sqrt(out.eigenvalues[k]) * omega_axial_rad_s;
  }
  // Row sums of the Hessian are identically 1, so (1,...,1)/sqrt(N) is an
  // exact eigenvector with eigenvalue 1: pin the CM mode to omega_axial.
  if (std::abs(out.eigenvalues[0] - 1.0) < 1e-8) {
    out.mode_frequencies_rad_s[0] = omega_axial_rad_s;
  }
  out.mode_vectors = std::move(vecs);
  return out;
}

ChainModes chain_modes(const ChainConfig& cfg, const SolverOptions& opts) {
  ChainModes out;
  out.length_scale_m = length_scale(cfg.omega_axial_rad_s, cfg.species);
  out.positions_u = equilibrium_positions(cfg.n_ions, opts);
  out.positions_m.resize(out.positions_u.size());
  std::transform(out.positions_u.begin(), out.positions_u.end(),
                 out.positions_m.begin(),
                 [&](double u) { return u * out.length_scale_m; });

  auto modes = axial_normal_modes(out.positions_u, cfg.omega_axial_rad_s,
                                  std::max(opts.tol, 1e-10) * 10.0);
  out.mode_eigenvalues = std::move(modes.eigenvalues);
  out.mode_frequencies_rad_s = std::move(modes.mode_frequencies_rad_s);
  out.mode_vectors = std::move(modes.mode_vectors);

  if (cfg.n_ions > 1) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < out.positions_u.size(); ++i) {
      gap = std::min(gap, out.positions_u[i] - out.positions_u[i - 1]);
    }
    out.min_spacing_m = gap * out.length_scale_m;
  }
  return out;
}

std::optional<double> min_spacing(const ChainConfig& cfg,
                                  const SolverOptions& opts) {
  return chain_modes(cfg, opts).min_spacing_m;
}

LambDicke lamb_dicke_cm(const ChainConfig& cfg, double wavelength_m,
                        double projection_angle_rad) {
  if (!(wavelength_m > 0.0)) throw DomainError("wavelength must be positive");
  if (projection_angle_rad < 0.0 ||
      projection_angle_rad > constants::pi / 2.0) {
    throw DomainError("projection angle must lie in [0, pi/2]");
  }
  if (cfg.n_ions < 1) throw DomainError("n_ions must be >= 1");
  if (!(cfg.omega_axial_rad_s > 0.0)) {
    throw DomainError("omega_axial must be positive");
  }

  LambDicke ld;
  ld.wavevector_rad_m = constants::two_pi / wavelength_m;
  ld.projection_angle_rad = projection_angle_rad;
  ld.mode_index = 0;
  const double cosang = std::cos(projection_angle_rad);
  ld.eta = ld.wavevector_rad_m * cosang *
           std::sqrt(constants::hbar_j_s /
                     (2.0 * cfg.n_ions * cfg.species.mass_kg *
                      cfg.omega_axial_rad_s));
  if (projection_angle_rad == constants::pi / 2.0) {
    ld.eta = 0.0;
    ld.no_axial_coupling = true;
  }
  return ld;
}

}  // namespace ionforge
