#include "doctest.h"

#include <cmath>
#include <complex>

#include "halfline/errors.hpp"
#include "halfline/schrodinger.hpp"
#include "oracles.hpp"

using namespace halfline;
using oracles::cplx;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("momentum validation") {
    CHECK_THROWS_AS(check_momentum(cplx(0, 0)), invalid_argument_error);
    CHECK_THROWS_AS(check_momentum(cplx(1, -0.1)), invalid_argument_error);
    CHECK_NOTHROW(check_momentum(cplx(2, 0)));
    CHECK_NOTHROW(check_momentum(cplx(0, 1)));
}

TEST_CASE("free jost values") {
    const Potential z = Potential::zero();
    const JostData a = jost(z, I, 0.0);
    CHECK(std::abs(a.psi - 1.0) == 0.0);
    CHECK(std::abs(a.dpsi - I * I) == 0.0);   // psi' = ik e^{ikx} = i*i at x=0

    const JostData b = jost(z, cplx(2, 0), 3.0);
    CHECK(b.psi == std::exp(I * 6.0));
    CHECK(b.dpsi == 2.0 * I * std::exp(I * 6.0));
}

TEST_CASE("free region is bit-exact, no integration") {
    const Potential V = Potential::square_well(2.0, 1.0, 1e-3);
    for (cplx k : {cplx(1.3, 0.0), cplx(0.4, 1.1), cplx(0, 2.5)}) {
        for (double x : {1.0, 2.0, 7.5}) {
            const JostData j = jost(V, k, x);
            CHECK(j.psi == std::exp(I * k * x));
            CHECK(j.dpsi == I * k * std::exp(I * k * x));
        }
    }
}

TEST_CASE("square well jost matches two-region closed form") {
    const Potential V = Potential::square_well(2.0, 1.0, 1e-3);
    for (cplx k : {cplx(1, 0), cplx(0.35, 0), cplx(2.0, 1.0), cplx(0, 1.2)}) {
        const JostData j = jost(V, k, 0.0);
        cplx psi, dpsi;
        oracles::well_jost0(2.0, 1.0, k, psi, dpsi);
        CHECK(std::abs(j.psi - psi) <= 1e-8 * std::abs(psi));
        CHECK(std::abs(j.dpsi - dpsi) <= 1e-8 * std::abs(dpsi));
    }
}

TEST_CASE("gaussian jost at high k: step-doubling tolerance is honest") {
    const Potential V = Potential::gaussian_bump(-1.0, 3.0, 0.5, 8.0, 1e-3);
    solver_options loose;
    loose.ode_tol = 1e-8;
    solver_options tight;
    tight.ode_tol = 1e-12;
    for (double k : {1.0, 10.0, 60.0, 120.0}) {
        const JostData a = jost(V, cplx(k, 0), 0.0, loose);
        const JostData b = jost(V, cplx(k, 0), 0.0, tight);
        CHECK(std::abs(a.psi - b.psi) <= 2e-6 * std::abs(b.psi));
    }
}

TEST_CASE("weyl function free values") {
    const Potential z = Potential::zero();
    CHECK(weyl_w(z, I * 0.7, 0.0) == I * (I * 0.7));   // w = ik = -0.7
    CHECK(std::abs(weyl_w(z, cplx(3, 0), 0.0) - cplx(0, 3)) == 0.0);
}

TEST_CASE("weyl vs riccati cross-method") {
    const Potential well = Potential::square_well(2.0, 1.0, 1e-3);
    const Potential bump = Potential::gaussian_bump(-1.0, 3.0, 0.5, 8.0, 1e-3);
    for (const Potential* V : {&well, &bump}) {
        for (cplx k : {cplx(1, 0), cplx(2, 0), cplx(1, 0.5), cplx(0.5, 1.5), cplx(0, 2.0)}) {
            const cplx a = weyl_w(*V, k, 0.0);
            const cplx b = riccati_w(*V, k, 0.0);
            CHECK(std::abs(a - b) <= 1e-7 * (1.0 + std::abs(a)));
        }
    }
}

TEST_CASE("riccati free fixed point is exact") {
    const Potential z = Potential::zero();
    for (cplx k : {cplx(1, 0), cplx(0.2, 3.0)}) CHECK(riccati_w(z, k, 0.7) == I * k);
}

TEST_CASE("herglotz positivity in the first quadrant") {
    const Potential V = Potential::square_well(2.0, 1.0, 1e-3);
    for (double re : {0.3, 1.0, 2.5})
        for (double im : {0.2, 0.9, 2.0})
            CHECK(std::imag(weyl_w(V, cplx(re, im), 0.0)) > 0.0);
}

TEST_CASE("wronskian: free value 2ik everywhere, derivative identity") {
    const Potential V = Potential::square_well(2.0, 1.0, 1e-3);
    const Potential z = Potential::zero();
    const cplx k(1.4, 0.6);
    CHECK(wronskian_W(z, k, 0.0) == 2.0 * I * k);
    CHECK(wronskian_W(V, k, 1.0) == 2.0 * I * k);
    CHECK(wronskian_W(V, k, 5.0) == 2.0 * I * k);

    // dW/dx = e^{-ikx} psi V: integrate over [0.2, 0.8] by Simpson on jost values
    auto dW = [&](double x) {
        const JostData j = jost(V, k, x);
        return std::exp(-I * k * x) * j.psi * V(x);
    };
    const int n = 200;
    cplx acc = 0;
    const double a = 0.2, b = 0.8, h = (b - a) / n;
    for (int i = 0; i < n; ++i)
        acc += h / 6.0 * (dW(a + i * h) + 4.0 * dW(a + (i + 0.5) * h) + dW(a + (i + 1) * h));
    const cplx diff = wronskian_W(V, k, b) - wronskian_W(V, k, a);
    CHECK(std::abs(diff - acc) <= 1e-7 * std::abs(diff));
}

TEST_CASE("constancy of |psi|^2 Im w for real k") {
    const Potential V = Potential::gaussian_bump(-1.0, 3.0, 0.5, 8.0, 1e-3);
    const cplx k(1.3, 0.0);
    double first = 0;
    for (double x : {0.0, 1.0, 2.5, 4.0, 6.0}) {
        const JostData j = jost(V, k, x);
        const double c = std::norm(j.psi) * std::imag(j.dpsi / j.psi);
        if (x == 0.0) first = c;
        CHECK(c == doctest::Approx(first).epsilon(1e-8));
    }
}

TEST_CASE("dirichlet eigenvalues: square well against FD oracle") {
    // depth 2 width 1 binds nothing with u(0)=0 (V0 a^2 < pi^2/4)
    const Potential shallow = Potential::square_well(2.0, 1.0, 1e-3);
    CHECK(dirichlet_eigenvalues(shallow).kappas.empty());

    // depth 8 width 1 binds exactly one
    const Potential deep = Potential::square_well(8.0, 1.0, 1e-3);
    const EigenvalueList eig = dirichlet_eigenvalues(deep);
    oracles::fd_operator fd(oracles::well_sampler(8.0, 1.0), 0.0, 60.0, 1e-4);
    const auto orc = fd.negative_eigenvalues(-9.0, 1e-9);
    REQUIRE(eig.kappas.size() == orc.size());
    for (std::size_t j = 0; j < orc.size(); ++j)
        CHECK(std::abs(-eig.kappas[j] * eig.kappas[j] - orc[j]) <= 1e-5);
}

TEST_CASE("dirichlet count for the wide well matches the FD oracle") {
    const Potential V = Potential::square_well(1.0, 10.0, 1e-3);
    oracles::fd_operator fd(oracles::well_sampler(1.0, 10.0), 0.0, 60.0, 1e-4);
    const auto orc = fd.negative_eigenvalues(-2.0, 1e-9);
    const EigenvalueList eig = dirichlet_eigenvalues(V);
    CHECK(eig.kappas.size() == orc.size());
    for (std::size_t j = 0; j < std::min(eig.kappas.size(), orc.size()); ++j)
        CHECK(std::abs(-eig.kappas[j] * eig.kappas[j] - orc[j]) <= 1e-5);
}

TEST_CASE("nonnegative potential has no bound states") {
    const Potential up = Potential::gaussian_bump(0.5, 3.0, 0.5, 8.0, 1e-3);
    CHECK(dirichlet_eigenvalues(up).kappas.empty());
    CHECK(whole_line_eigenvalues(up, 0.0).kappas.empty());
}

TEST_CASE("whole-line eigenvalues against FD oracle on [-40, 41]") {
    const Potential V = Potential::square_well(2.0, 1.0, 1e-3);
    const EigenvalueList eig = whole_line_eigenvalues(V, 0.0);
    auto vline = [](double x) {   // chi_{(0,inf)} V with mean at both jumps
        if (x < 0 || x > 1) return 0.0;
        if (x == 0.0 || x == 1.0) return -1.0;
        return -2.0;
    };
    oracles::fd_operator fd(vline, -40.0, 41.0, 1e-4);
    const auto orc = fd.negative_eigenvalues(-3.0, 1e-9);
    REQUIRE(eig.kappas.size() == orc.size());
    for (std::size_t j = 0; j < orc.size(); ++j)
        CHECK(std::abs(-eig.kappas[j] * eig.kappas[j] - orc[j]) <= 1e-5);

    // sign of W(0, i kappa) flips across the bound state
    const double kap = eig.kappas[0];
    const double lo = std::real(wronskian_W(V, I * (kap - 1e-3), 0.0));
    const double hi = std::real(wronskian_W(V, I * (kap + 1e-3), 0.0));
    CHECK(lo * hi < 0);
}

TEST_CASE("whole-line eigenvalues: free cases") {
    CHECK(whole_line_eigenvalues(Potential::zero(), 0.0).kappas.empty());
    const Potential V = Potential::square_well(2.0, 1.0, 1e-3);
    CHECK(whole_line_eigenvalues(V, 1.0).kappas.empty());
    CHECK(whole_line_eigenvalues(V, 2.5).kappas.empty());
}

TEST_CASE("weyl_w throws pole proximity at a Dirichlet bound state") {
    const Potential V = Potential::square_well(8.0, 1.0, 1e-3);
    const EigenvalueList dir = dirichlet_eigenvalues(V);
    REQUIRE(!dir.kappas.empty());
    CHECK_THROWS_AS((void)weyl_w(V, I * dir.kappas[0], 0.0), pole_proximity_error);

    // the riccati trajectory hits the same zero of psi_+ near x = 0
    CHECK_THROWS_AS((void)riccati_w(V, I * dir.kappas[0], 0.0), pole_crossing_error);
}

TEST_CASE("overflow guard for deep imaginary k through the jost path") {
    const Potential V = Potential::gaussian_bump(-1.0, 3.0, 0.5, 8.0, 1e-3);
    CHECK_THROWS_AS((void)jost(V, I * 200.0, 0.0), numeric_failure);
}

TEST_CASE("interlacing of half- and whole-line spectra (square well)") {
    const Potential V = Potential::square_well(8.0, 1.0, 1e-3);
    const EigenvalueList half = dirichlet_eigenvalues(V);
    const EigenvalueList whole = whole_line_eigenvalues(V, 0.0);
    REQUIRE(!half.kappas.empty());
    REQUIRE(whole.kappas.size() >= half.kappas.size());
    const auto E = half.energies();
    const auto E0 = whole.energies();
    for (std::size_t j = 0; j < E.size(); ++j) {
        CHECK(E0[j] <= E[j]);
        if (j + 1 < E0.size()) CHECK(E[j] <= E0[j + 1]);
    }
}
