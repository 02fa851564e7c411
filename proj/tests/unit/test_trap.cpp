#include <doctest.h>

#include "ionforge/constants.hpp"
#include "ionforge/errors.hpp"
#include "ionforge/trap.hpp"
#include "support/oracles.hpp"

using namespace ionforge;
namespace k = ionforge::constants;

namespace {

TrapParams paper_trap() { return TrapParams{}; }  // 300 V, 2pi*10 MHz, ...

}  // namespace

TEST_CASE("mathieu q at the design drive point") {
  const auto trap = paper_trap();
  const auto ion = ca40();
  const double q = mathieu_q(trap, ion);

  // Independent evaluation of the closed form right here.
  const double expected =
      2.0 * 1.602176634e-19 * 300.0 /
      (40.0 * 1.66053906660e-27 * 0.85e-3 * 0.85e-3 *
       (2.0 * M_PI * 10e6) * (2.0 * M_PI * 10e6));
  CHECK(q == doctest::Approx(expected).epsilon(1e-12));
  CHECK(q == doctest::Approx(0.507405).epsilon(1e-4));
}

TEST_CASE("mathieu q edge cases and scalings") {
  auto trap = paper_trap();
  const auto ion = ca40();

  SUBCASE("zero drive gives q = 0") {
    trap.v_rf_volts = 0.0;
    CHECK(mathieu_q(trap, ion) == 0.0);
  }
  SUBCASE("doubling r0 quarters q") {
    const double q1 = mathieu_q(trap, ion);
    trap.r0_m *= 2.0;
    CHECK(mathieu_q(trap, ion) == doctest::Approx(q1 / 4.0).epsilon(1e-12));
    CHECK(mathieu_q(trap, ion) == doctest::Approx(0.126851).epsilon(1e-4));
  }
  SUBCASE("q linear in v_rf") {
    const double q1 = mathieu_q(trap, ion);
    trap.v_rf_volts *= 2.0;
    CHECK(mathieu_q(trap, ion) == doctest::Approx(2.0 * q1).epsilon(1e-12));
  }
  SUBCASE("q inverse in mass") {
    const double q1 = mathieu_q(trap, ion);
    IonSpecies heavy = ion;
    heavy.mass_kg *= 2.0;
    CHECK(q1 / mathieu_q(trap, heavy) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("bad inputs rejected") {
    trap.r0_m = 0.0;
    CHECK_THROWS_AS(mathieu_q(trap, ion), DomainError);
    trap.r0_m = 0.85e-3;
    trap.v_rf_volts = -1.0;
    CHECK_THROWS_AS(mathieu_q(trap, ion), DomainError);
  }
}

TEST_CASE("Mathieu equation oracle confirms stability and the lowest-order "
          "radial frequency") {
  const auto trap = paper_trap();
  const auto ion = ca40();
  const auto sec = secular_frequencies(trap, ion);

  const auto floquet = oracles::mathieu_floquet(sec.q);
  CHECK(floquet.bounded);  // q ~ 0.507 is inside the stability region

  // omega_sec = beta*Omega/2 from the monodromy matrix. At q ~ 0.507 the
  // lowest-order q/(2 sqrt 2) sits 5.9% below the Floquet value (the
  // deviation grows ~q^2; it is <5% only below q ~ 0.45).
  const double omega_exact = floquet.beta * trap.omega_rf_rad_s / 2.0;
  CHECK(sec.omega_radial_rad_s ==
        doctest::Approx(omega_exact).epsilon(0.065));

  // Outside the stability bound the motion is unbounded.
  CHECK_FALSE(oracles::mathieu_floquet(1.2).bounded);
}

TEST_CASE("secular frequencies at the design point") {
  const auto trap = paper_trap();
  const auto ion = ca40();
  const auto sec = secular_frequencies(trap, ion);

  CHECK(sec.stable);
  CHECK(sec.radial_dominant);
  CHECK(sec.omega_radial_rad_s ==
        doctest::Approx(k::two_pi * 1.79395e6).epsilon(1e-4));
  // kappa=0.3, 27.3 V endcaps, z0=5mm land right at the 200 kHz CM design.
  CHECK(sec.omega_axial_rad_s ==
        doctest::Approx(k::two_pi * 200.08e3).epsilon(1e-4));
}

TEST_CASE("axial frequency scaling and edge cases") {
  auto trap = paper_trap();
  const auto ion = ca40();

  SUBCASE("omega_axial proportional to sqrt(u_dc)") {
    const double w1 = secular_frequencies(trap, ion).omega_axial_rad_s;
    trap.u_dc_volts *= 4.0;
    const double w2 = secular_frequencies(trap, ion).omega_axial_rad_s;
    CHECK(w2 == doctest::Approx(2.0 * w1).epsilon(1e-12));
  }
  SUBCASE("zero endcap voltage gives zero axial frequency") {
    trap.u_dc_volts = 0.0;
    CHECK(secular_frequencies(trap, ion).omega_axial_rad_s == 0.0);
  }
  SUBCASE("q above the stability bound flags unstable") {
    trap.v_rf_volts = 300.0 * 1.2 / 0.5074;  // q ~ 1.2
    const auto sec = secular_frequencies(trap, ion);
    CHECK(sec.q > kMathieuStabilityLimit);
    CHECK_FALSE(sec.stable);
  }
}

TEST_CASE("stability flag is monotone in the drive voltage") {
  auto trap = paper_trap();
  const auto ion = ca40();
  bool seen_stable = false;
  // Sweep downward from an unstable drive; once stable, always stable.
  for (double v = 700.0; v > 1.0; v *= 0.8) {
    trap.v_rf_volts = v;
    const bool stable = secular_frequencies(trap, ion).stable;
    if (seen_stable) CHECK(stable);
    seen_stable = seen_stable || stable;
  }
  CHECK(seen_stable);
}

TEST_CASE("stability report") {
  const auto trap = paper_trap();
  const auto ion = ca40();

  SUBCASE("design point is a string") {
    const auto rep = stability_report(trap, ion);
    CHECK(rep.radial_axial_ratio == doctest::Approx(8.966).epsilon(1e-3));
    CHECK(rep.string_phase);
  }
  SUBCASE("equal frequencies fail any threshold above 1") {
    // Raise u_dc until the axial frequency matches the radial one.
    auto t = trap;
    const auto sec = secular_frequencies(t, ion);
    const double scale =
        sec.omega_radial_rad_s / sec.omega_axial_rad_s;
    t.u_dc_volts *= scale * scale;
    const auto rep = stability_report(t, ion);
    CHECK(rep.radial_axial_ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(rep.string_phase);
  }
  SUBCASE("unstable drive marks the report unstable") {
    auto t = trap;
    t.v_rf_volts = 300.0 * 1.2 / 0.5074;
    const auto rep = stability_report(t, ion);
    CHECK_FALSE(rep.frequencies.stable);
    CHECK_FALSE(rep.string_phase);
  }
  SUBCASE("threshold must exceed 1") {
    CHECK_THROWS_AS(stability_report(trap, ion, 1.0), DomainError);
  }
}

TEST_CASE("ca40 catalog carries the levels the experiment uses") {
  const auto ion = ca40();
  CHECK(ion.mass_kg > 0.0);
  CHECK(ion.charge_c > 0.0);
  CHECK(ion.transition("S1/2-P1/2").wavelength_m ==
        doctest::Approx(397e-9));
  CHECK(ion.transition("S1/2-D3/2").wavelength_m ==
        doctest::Approx(732e-9));
  CHECK(ion.transition("S1/2-D3/2").lifetime_s ==
        doctest::Approx(1.08));
  CHECK(ion.transition("D3/2-P1/2").wavelength_m ==
        doctest::Approx(866e-9));
  CHECK(ion.transition("S1/2-D5/2").wavelength_m ==
        doctest::Approx(729e-9));
  CHECK_THROWS_AS(ion.transition("nope"), DomainError);
  CHECK_THROWS_AS(species_by_name("Yb171"), DomainError);
}

TEST_CASE("qubit assignments") {
  const auto single = qubit_assignment(Scheme::SingleLaser);
  CHECK(single.zero != single.one);
  CHECK(single.one != single.aux);
  CHECK(single.zero != single.aux);
  CHECK(single.zeeman_splitting_rad_s == 0.0);

  const auto raman = qubit_assignment(Scheme::Raman);
  CHECK(raman.zero != raman.one);
  CHECK(raman.one != raman.aux);
  CHECK(raman.zeeman_field_t == doctest::Approx(0.02));  // 200 Gauss
  // g_J mu_B B / hbar, a few hundred MHz: resolvable by the lasers.
  CHECK(raman.zeeman_splitting_rad_s ==
        doctest::Approx(k::two_pi * 560.5e6).epsilon(1e-3));
}
