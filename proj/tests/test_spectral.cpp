#include "doctest.h"

#include <cmath>

#include "halfline/errors.hpp"
#include "halfline/spectral.hpp"
#include "oracles.hpp"

using namespace halfline;
using oracles::cplx;

TEST_CASE("free density rho0") {
    CHECK(rho0_density(1.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-15));
    CHECK(rho0_density(4.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-15));
    CHECK(rho0_density(M_PI * M_PI) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(rho0_density(0.0), invalid_argument_error);
    CHECK_THROWS_AS(rho0_density(-1.0), invalid_argument_error);
}

TEST_CASE("spectral density: free potential and nonnegativity") {
    const Potential z = Potential::zero();
    for (double E : {0.3, 1.0, 7.0})
        CHECK(spectral_density(z, E) == doctest::Approx(rho0_density(E)).epsilon(1e-14));

    const Potential V = Potential::square_well(2.0, 1.0, 1e-3);
    for (double E : {0.2, 1.0, 5.0, 50.0}) CHECK(spectral_density(V, E) >= 0.0);
}

TEST_CASE("spectral density cross-method against the riccati path") {
    const Potential V = Potential::square_well(2.0, 1.0, 1e-3);
    const double E = 1.0;
    const double direct = spectral_density(V, E);
    const double ricc = std::imag(riccati_w(V, cplx(std::sqrt(E), 0.0), 0.0)) / M_PI;
    CHECK(direct == doctest::Approx(ricc).epsilon(1e-7));
}

TEST_CASE("high-energy limit: density approaches the free one") {
    const Potential up = Potential::gaussian_bump(1.0, 3.0, 0.5, 8.0, 1e-3);
    const double ratio = spectral_density(up, 400.0) / rho0_density(400.0);
    CHECK(std::abs(ratio - 1.0) < 0.01);
}

TEST_CASE("nu from potential: free is zero, grid validation") {
    const Potential z = Potential::zero();
    const SignedMeasureNu nu = nu_from_potential(z, {1.5, 2.0, 3.0});
    for (double d : nu.ac_density) CHECK(d == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(nu_from_potential(z, {0.5, 2.0}), invalid_argument_error);
}

TEST_CASE("nu change-of-variables identity on an energy window") {
    // (2/pi) int f(k^2) k dnu = int f(E) [drho - drho0] for f = indicator [4, 16]
    const Potential V = Potential::square_well(2.0, 1.0, 1e-3);
    auto lhs_f = [&](double k) {
        const cplx w = weyl_w(V, cplx(k, 0.0), 0.0);
        return (2.0 / M_PI) * k * (std::imag(w) - k);
    };
    auto rhs_f = [&](double E) { return spectral_density(V, E) - rho0_density(E); };
    const double lhs = oracles::adaptive_simpson(lhs_f, 2.0, 4.0, 1e-11);
    const double rhs = oracles::romberg(rhs_f, 4.0, 16.0, 18, 1e-11);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
}

TEST_CASE("nu density scales linearly in a weak bump") {
    const double k = 2.3;
    double prev = 0;
    for (int i = 0; i < 3; ++i) {
        const double amp = 0.2 / (1 << i);
        const Potential V = Potential::gaussian_bump(amp, 3.0, 0.5, 8.0, 1e-3);
        const SignedMeasureNu nu = nu_from_potential(V, {k});
        if (i > 0) CHECK(prev / nu.ac_density[0] == doctest::Approx(2.0).epsilon(0.1));
        prev = nu.ac_density[0];
    }
}

TEST_CASE("lieb-thirring sums") {
    EigenvalueList e;
    CHECK(lieb_thirring_sum(e) == 0.0);
    e.kappas = {1.0};
    CHECK(lieb_thirring_sum(e) == 1.0);

    // square well whole-line list against the FD oracle Sum |E|^{3/2}
    const Potential V = Potential::square_well(2.0, 1.0, 1e-3);
    const EigenvalueList whole = whole_line_eigenvalues(V, 0.0);
    auto vline = [](double x) {
        if (x < 0 || x > 1) return 0.0;
        if (x == 0.0 || x == 1.0) return -1.0;
        return -2.0;
    };
    oracles::fd_operator fd(vline, -40.0, 41.0, 1e-4);
    double orc = 0;
    for (double E : fd.negative_eigenvalues(-3.0, 1e-10)) orc += std::pow(-E, 1.5);
    CHECK(lieb_thirring_sum(whole) == doctest::Approx(orc).epsilon(1e-4));
}

TEST_CASE("interlacing check semantics") {
    EigenvalueList half, whole;
    half.kind = EigenvalueList::op_kind::half_line_dirichlet;
    CHECK(interlacing_check(half, whole));   // both empty

    whole.kappas = {0.9};
    CHECK(interlacing_check(half, whole));   // vacuous with empty half

    half.kappas = {0.5};
    CHECK(interlacing_check(half, whole));   // E0 = -0.81 <= E = -0.25

    half.kappas = {1.2};                     // half below whole: violation
    CHECK_FALSE(interlacing_check(half, whole));

    half.kappas = {0.5};
    whole.kappas = {};                       // half nonempty but whole empty
    CHECK_FALSE(interlacing_check(half, whole));
}

TEST_CASE("interlacing holds for the square well") {
    const Potential V = Potential::square_well(8.0, 1.0, 1e-3);
    CHECK(interlacing_check(dirichlet_eigenvalues(V), whole_line_eigenvalues(V, 0.0)));
}

TEST_CASE("dirichlet point mass weight matches the residue of w") {
    const Potential V = Potential::square_well(8.0, 1.0, 1e-3);
    const EigenvalueList dir = dirichlet_eigenvalues(V);
    REQUIRE(dir.kappas.size() == 1);
    const double kap = dir.kappas[0];
    const double c = dirichlet_mass(V, kap);
    CHECK(c > 0);

    // residue through a different route: (E_j - z) w(z) extrapolated in kappa
    auto probe = [&](double d) {
        const cplx w = weyl_w(V, cplx(0.0, kap + d), 0.0);
        const double E = -kap * kap, z = -(kap + d) * (kap + d);
        return std::real((E - z) * w);
    };
    const double r1 = probe(1e-3), r2 = probe(5e-4);
    const double extrap = 2 * r2 - r1;   // h -> 0 Richardson, error ~ h
    CHECK(c == doctest::Approx(extrap).epsilon(1e-4));
}

TEST_CASE("spectral measure assembly and JSON round trip") {
    const Potential V = Potential::square_well(8.0, 1.0, 1e-3);
    const SpectralMeasure m = spectral_measure_from_potential(V, {0.5, 1.0, 2.0, 4.0});
    CHECK(m.point_masses.size() == 1);
    CHECK(m.point_masses[0].first < 0);
    CHECK(m.point_masses[0].second > 0);
    const SpectralMeasure back = SpectralMeasure::from_json(m.to_json());
    CHECK(back.energy_grid == m.energy_grid);
    CHECK(back.ac_density == m.ac_density);
    CHECK(back.point_masses == m.point_masses);

    SignedMeasureNu nu;
    nu.k_grid = {1.5, 2.0};
    nu.ac_density = {0.1, -0.2};
    nu.point_masses = {{3.0, 0.7}};
    const SignedMeasureNu nb = SignedMeasureNu::from_json(nu.to_json());
    CHECK(nb.k_grid == nu.k_grid);
    CHECK(nb.ac_density == nu.ac_density);
    CHECK(nb.point_masses == nu.point_masses);

    SignedMeasureNu bad = nu;
    bad.ac_density = {0.1, -5.0};   // below -k: violates Im w >= 0
    CHECK_THROWS_AS(bad.validate(), invalid_argument_error);
}
