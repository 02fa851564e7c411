#include <doctest.h>

#include <cmath>

#include "ionforge/chain.hpp"
#include "ionforge/constants.hpp"
#include "ionforge/errors.hpp"
#include "support/oracles.hpp"

using namespace ionforge;
namespace k = ionforge::constants;

namespace {

ChainConfig cfg(int n, double omega) {
  return ChainConfig{n, omega, ca40()};
}

}  // namespace

TEST_CASE("length scale at the two operating points") {
  const auto ion = ca40();
  // Direct evaluation with the closed form, constants inlined.
  const double ke2 = 1.602176634e-19 * 1.602176634e-19 /
                     (4.0 * M_PI * 8.8541878128e-12);
  const double m = 40.0 * 1.66053906660e-27;
  const double w200 = 2.0 * M_PI * 200e3;
  const double expected200 = std::cbrt(ke2 / (m * w200 * w200));

  CHECK(length_scale(w200, ion) ==
        doctest::Approx(expected200).epsilon(1e-12));
  CHECK(length_scale(w200, ion) == doctest::Approx(13.0e-6).epsilon(1e-3));
  CHECK(length_scale(2.0 * M_PI * 100e3, ion) ==
        doctest::Approx(20.6e-6).epsilon(2e-3));

  SUBCASE("power law: quadrupling omega divides l by 4^(2/3)") {
    const double l1 = length_scale(w200, ion);
    const double l2 = length_scale(4.0 * w200, ion);
    CHECK(l1 / l2 == doctest::Approx(std::pow(4.0, 2.0 / 3.0)).epsilon(1e-12));
  }
  SUBCASE("zero frequency rejected") {
    CHECK_THROWS_AS(length_scale(0.0, ion), DomainError);
  }
}

TEST_CASE("equilibrium positions: small-N closed forms") {
  SUBCASE("single ion sits at the center") {
    CHECK(equilibrium_positions(1) == std::vector<double>{0.0});
  }
  SUBCASE("two ions at +-(1/4)^(1/3)") {
    const auto u = equilibrium_positions(2);
    const double root = std::cbrt(0.25);  // 0.62996...
    REQUIRE(u.size() == 2);
    CHECK(u[0] == doctest::Approx(-root).epsilon(1e-10));
    CHECK(u[1] == doctest::Approx(root).epsilon(1e-10));
  }
  SUBCASE("three ions at +-(5/4)^(1/3) and 0") {
    const auto u = equilibrium_positions(3);
    const double d = std::cbrt(1.25);  // 1.07722...
    REQUIRE(u.size() == 3);
    CHECK(u[0] == doctest::Approx(-d).epsilon(1e-10));
    CHECK(u[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(u[2] == doctest::Approx(d).epsilon(1e-10));
  }
  SUBCASE("N=0 rejected") {
    CHECK_THROWS_AS(equilibrium_positions(0), DomainError);
  }
}

TEST_CASE("Newton solver matches brute-force potential minimization") {
  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    const auto newton = equilibrium_positions(n);
    const auto brute = oracles::brute_force_positions(n);
    REQUIRE(newton.size() == brute.size());
    for (std::size_t i = 0; i < newton.size(); ++i) {
      CHECK(std::abs(newton[i] - brute[i]) < 1e-7);
    }
  }
}

TEST_CASE("equilibrium invariants up to N=10") {
  for (int n = 2; n <= 10; ++n) {
    CAPTURE(n);
    const auto u = equilibrium_positions(n);
    // converged
    CHECK(max_force_residual(u) < 1e-10);
    // ordered, centered, reflection-symmetric
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      sum += u[i];
      if (i > 0) CHECK(u[i] > u[i - 1]);
      CHECK(u[i] == doctest::Approx(-u[u.size() - 1 - i])
                        .scale(1.0)
                        .epsilon(1e-9));
    }
    CHECK(std::abs(sum) < 1e-9);
  }
}

TEST_CASE("solver reports non-convergence with residuals") {
  try {
    equilibrium_positions(5, SolverOptions{1e-10, 1});
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.residuals().size() == 5);
  }
}

TEST_CASE("axial normal modes: analytic spectra") {
  SUBCASE("one ion: single CM mode") {
    const auto modes = axial_normal_modes({0.0}, k::two_pi * 200e3);
    REQUIRE(modes.eigenvalues.size() == 1);
    CHECK(modes.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(modes.mode_frequencies_rad_s[0] ==
          doctest::Approx(k::two_pi * 200e3));
  }
  SUBCASE("two ions: eigenvalues 1 and 3") {
    const auto u = equilibrium_positions(2);
    const auto modes = axial_normal_modes(u, 1.0);
    REQUIRE(modes.eigenvalues.size() == 2);
    CHECK(modes.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(modes.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(modes.mode_frequencies_rad_s[1] ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  }
  SUBCASE("three ions: eigenvalues 1, 3, 29/5") {
    const auto u = equilibrium_positions(3);
    const auto modes = axial_normal_modes(u, 1.0);
    REQUIRE(modes.eigenvalues.size() == 3);
    CHECK(modes.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(modes.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(modes.eigenvalues[2] == doctest::Approx(29.0 / 5.0).epsilon(1e-9));
  }
  SUBCASE("non-equilibrium positions rejected") {
    CHECK_THROWS_AS(axial_normal_modes({-1.0, 0.9}, 1.0), PreconditionError);
  }
}

TEST_CASE("mode invariants up to N=10") {
  const double omega = k::two_pi * 200e3;
  for (int n = 1; n <= 10; ++n) {
    CAPTURE(n);
    const auto u = equilibrium_positions(n);
    const auto modes = axial_normal_modes(u, omega);

    // CM mode: frequency pinned at omega_axial, flat eigenvector.
    CHECK(std::abs(modes.mode_frequencies_rad_s[0] - omega) / omega < 1e-10);
    const auto& v0 = modes.mode_vectors.col(0);
    for (Eigen::Index i = 0; i < v0.size(); ++i) {
      CHECK(v0[i] == doctest::Approx(1.0 / std::sqrt(double(n)))
                         .epsilon(1e-8));
    }
    // Breathing mode eigenvalue is exactly 3 for every N.
    if (n >= 2) {
      CHECK(std::abs(modes.eigenvalues[1] - 3.0) < 1e-8);
    }
    // Orthonormal mode matrix.
    const Eigen::MatrixXd gram =
        modes.mode_vectors.transpose() * modes.mode_vectors -
        Eigen::MatrixXd::Identity(n, n);
    CHECK(gram.cwiseAbs().maxCoeff() < 1e-10);
    // Ascending frequencies.
    for (std::size_t kx = 1; kx < modes.eigenvalues.size(); ++kx) {
      CHECK(modes.eigenvalues[kx] >= modes.eigenvalues[kx - 1]);
    }
  }
}

TEST_CASE("minimum spacing in physical units") {
  SUBCASE("two ions at 100 kHz: near the 25 um regime") {
    const auto spacing = min_spacing(cfg(2, k::two_pi * 100e3));
    REQUIRE(spacing.has_value());
    CHECK(*spacing == doctest::Approx(26.0e-6).epsilon(4e-3));
  }
  SUBCASE("two ions at 200 kHz") {
    const auto spacing = min_spacing(cfg(2, k::two_pi * 200e3));
    REQUIRE(spacing.has_value());
    CHECK(*spacing == doctest::Approx(16.4e-6).epsilon(2e-3));
  }
  SUBCASE("single ion: no spacing") {
    CHECK_FALSE(min_spacing(cfg(1, k::two_pi * 200e3)).has_value());
  }
  SUBCASE("min spacing is the central gap") {
    const auto modes = chain_modes(cfg(5, k::two_pi * 200e3));
    REQUIRE(modes.min_spacing_m.has_value());
    const auto& p = modes.positions_m;
    CHECK(*modes.min_spacing_m == doctest::Approx(p[2] - p[1]).epsilon(1e-12));
  }
}

TEST_CASE("Lamb-Dicke parameter of the CM mode") {
  const double omega = k::two_pi * 200e3;

  SUBCASE("single ion, 732 nm, axial beam") {
    const auto ld = lamb_dicke_cm(cfg(1, omega), 732e-9, 0.0);
    CHECK(ld.eta == doctest::Approx(0.2157).epsilon(1e-3));
    CHECK_FALSE(ld.no_axial_coupling);

    // Recoil-energy route: eta^2 = E_recoil cos^2(angle) / (N hbar omega).
    const double m = 40.0 * 1.66053906660e-27;
    const double hbar = 1.054571817e-34;
    const double kvec = 2.0 * M_PI / 732e-9;
    const double recoil = hbar * hbar * kvec * kvec / (2.0 * m);
    const double eta_sq = recoil / (hbar * omega);
    CHECK(ld.eta * ld.eta == doctest::Approx(eta_sq).epsilon(1e-10));
  }
  SUBCASE("orthogonal beam gives zero with a warning flag") {
    const auto ld = lamb_dicke_cm(cfg(1, omega), 732e-9, M_PI / 2.0);
    CHECK(ld.eta == 0.0);
    CHECK(ld.no_axial_coupling);
  }
  SUBCASE("eta scales as N^(-1/2)") {
    const auto one = lamb_dicke_cm(cfg(1, omega), 732e-9, 0.0);
    const auto four = lamb_dicke_cm(cfg(4, omega), 732e-9, 0.0);
    CHECK(four.eta == doctest::Approx(one.eta / 2.0).epsilon(1e-12));
  }
  SUBCASE("bad inputs") {
    CHECK_THROWS_AS(lamb_dicke_cm(cfg(1, omega), 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(lamb_dicke_cm(cfg(1, omega), 732e-9, 2.0), DomainError);
    CHECK_THROWS_AS(lamb_dicke_cm(cfg(0, omega), 732e-9, 0.0), DomainError);
  }
}
