#include "halfline/schrodinger.hpp"

#include <algorithm>
#include <cmath>

#include "halfline/errors.hpp"

namespace halfline {

namespace {
const cplx I(0.0, 1.0);
}

void check_momentum(cplx k) {
    if (!(std::imag(k) >= 0.0) || k == cplx(0.0, 0.0) || !std::isfinite(std::real(k)) ||
        !std::isfinite(std::imag(k)))
        throw invalid_argument_error("momentum must satisfy Im k >= 0, k != 0");
}

namespace detail {

wave_state jost_scaled(const Potential& V, cplx k, double x, const solver_options& opt,
                       double* max_scale) {
    const double X = V.support_end();
    wave_state y{1.0, I * k};
    if (x >= X) {
        // free region: psi_scaled = e^{ik(x-X)}
        const cplx e = std::exp(I * k * (x - X));
        if (max_scale) *max_scale = std::max(1.0, std::abs(e));
        return {e, I * k * e};
    }
    if (std::imag(k) * (X - x) > 600.0)
        throw numeric_failure("jost: e^{Im k (X-x)} overflows; use the Riccati path", x);
    auto Vf = [&V](double s) { return V(s); };
    return magnus_propagate(Vf, k * k, X, x, y, opt.ode_tol, V.breakpoints(), max_scale);
}

cplx dkappa_psi0(const Potential& V, double kappa, const solver_options& opt) {
    const double d = 1e-5 * (1.0 + kappa);
    solver_options tight = opt;
    tight.ode_tol = std::min(opt.ode_tol, 1e-12);
    const wave_state hi = jost_scaled(V, I * (kappa + d), 0.0, tight, nullptr);
    const wave_state lo = jost_scaled(V, I * (kappa - d), 0.0, tight, nullptr);
    return (hi.psi - lo.psi) / (2.0 * d);
}

} // namespace detail

JostData jost(const Potential& V, cplx k, double x, const solver_options& opt) {
    check_momentum(k);
    if (x < 0) throw invalid_argument_error("jost: x must be >= 0");
    const double X = V.support_end();
    if (x >= X) {
        const cplx e = std::exp(I * k * x);   // exact free values, no integration
        return {e, I * k * e, x, k};
    }
    if (std::imag(k) * (X - x) > 600.0)
        throw numeric_failure("jost: e^{Im k (X-x)} overflows; use the Riccati path", x);
    const cplx eX = std::exp(I * k * X);
    wave_state y{eX, I * k * eX};
    auto Vf = [&V](double s) { return V(s); };
    y = magnus_propagate(Vf, k * k, X, x, y, opt.ode_tol, V.breakpoints(), nullptr);
    return {y.psi, y.dpsi, x, k};
}

cplx weyl_w(const Potential& V, cplx k, double x, const solver_options& opt) {
    check_momentum(k);
    if (x >= V.support_end()) return I * k;
    double scale = 1.0;
    const wave_state y = detail::jost_scaled(V, k, x, opt, &scale);
    // psi values below the integrator's own resolution cannot be told from 0
    // (capped so deliberately coarse tolerances do not flag everything)
    const double thresh = std::max(opt.pole_threshold, std::min(30.0 * opt.ode_tol, 1e-4));
    if (std::abs(y.psi) < thresh * scale)
        throw pole_proximity_error("weyl_w: psi_+ vanishes at the query point (bound state "
                                   "pole or resonance nearby)");
    return y.dpsi / y.psi;
}

cplx riccati_w(const Potential& V, cplx k, double x, const solver_options& opt) {
    check_momentum(k);
    const double X = V.support_end();
    if (x >= X) return I * k;
    const cplx k2 = k * k;
    cplx w = I * k;
    // w = psi'/psi obeys w' = V - k^2 - w^2 (ik is the free stationary point)
    auto rhs = [&](double s, const cplx* y, cplx* dy) {
        if (std::abs(y[0]) > 1e8)
            throw pole_crossing_error("riccati_w: |w| blew up (psi_+ zero on the path)");
        dy[0] = V(s) - k2 - y[0] * y[0];
    };
    rk45_propagate(rhs, 1, X, x, &w, opt.ode_tol, V.breakpoints());
    if (std::abs(w) > 1e8)
        throw pole_crossing_error("riccati_w: |w| blew up (psi_+ zero on the path)");
    return w;
}

cplx wronskian_W(const Potential& V, cplx k, double x, const solver_options& opt) {
    check_momentum(k);
    if (x < 0) throw invalid_argument_error("wronskian_W: x must be >= 0");
    const double X = V.support_end();
    if (x >= X) return 2.0 * I * k;
    // scaled state differs from the true one by e^{ikX}; restore it here
    const wave_state y = detail::jost_scaled(V, k, x, opt, nullptr);
    return std::exp(I * k * (X - x)) * (y.dpsi + I * k * y.psi);
}

std::vector<double> EigenvalueList::energies() const {
    std::vector<double> e(kappas.size());
    for (std::size_t i = 0; i < kappas.size(); ++i) e[i] = -kappas[i] * kappas[i];
    return e;
}

namespace {

// Sign-scan f on (0, kappa_max], bisect each bracket, return descending roots.
std::vector<double> scan_roots(const std::function<double(double)>& f, double kappa_max,
                               const solver_options& opt) {
    const int n = std::max(8, opt.scan_points);
    std::vector<double> grid(n), val(n);
    for (int i = 0; i < n; ++i) grid[i] = kappa_max * (i + 1) / n;
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) { val[i] = f(grid[i]); });

    std::vector<double> roots;
    for (int i = 0; i + 1 < n; ++i) {
        double lo = grid[i], hi = grid[i + 1], flo = val[i], fhi = val[i + 1];
        if (flo == 0.0) { roots.push_back(lo); continue; }
        if (flo * fhi > 0.0) continue;
        while (hi - lo > opt.bisect_tol) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if (fm == 0.0) { lo = hi = mid; break; }
            if (flo * fm < 0) { hi = mid; fhi = fm; } else { lo = mid; flo = fm; }
        }
        roots.push_back(0.5 * (lo + hi));
    }
    if (!val.empty() && val.back() == 0.0) roots.push_back(grid.back());
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [&](double a, double b) { return std::abs(a - b) < 1e-9; }),
                roots.end());
    std::reverse(roots.begin(), roots.end());
    return roots;
}

} // namespace

EigenvalueList dirichlet_eigenvalues(const Potential& V, const solver_options& opt) {
    EigenvalueList out;
    out.kind = EigenvalueList::op_kind::half_line_dirichlet;
    out.t = 0;
    const double vmin = V.min_value();
    if (V.support_end() <= 0) return out;
    const double kappa_max = std::sqrt(std::max(0.0, -vmin)) + 0.5;
    auto f = [&](double kappa) {
        return std::real(detail::jost_scaled(V, I * kappa, 0.0, opt, nullptr).psi);
    };
    out.kappas = scan_roots(f, kappa_max, opt);
    return out;
}

EigenvalueList whole_line_eigenvalues(const Potential& V, double t, const solver_options& opt) {
    if (t < 0) throw invalid_argument_error("whole_line_eigenvalues: t must be >= 0");
    EigenvalueList out;
    out.kind = EigenvalueList::op_kind::whole_line;
    out.t = t;
    if (t >= V.support_end()) return out;   // L_t is free
    const double vmin = V.min_value();
    const double kappa_max = std::sqrt(std::max(0.0, -vmin)) + 0.5;
    auto f = [&](double kappa) {
        const wave_state y = detail::jost_scaled(V, I * kappa, t, opt, nullptr);
        return std::real(y.dpsi) - kappa * std::real(y.psi);
    };
    out.kappas = scan_roots(f, kappa_max, opt);
    return out;
}

std::vector<cplx> weyl_w_scan(const Potential& V, const std::vector<double>& ks, double x,
                              const solver_options& opt, exec mode) {
    std::vector<cplx> out(ks.size());
    parallel_for(ks.size(), [&](std::size_t i) { out[i] = weyl_w(V, cplx(ks[i], 0.0), x, opt); },
                 mode);
    return out;
}

} // namespace halfline
