#include "halfline/sumrules.hpp"

#include <algorithm>
#include <cmath>

#include "halfline/errors.hpp"
#include "halfline/json_out.hpp"

namespace halfline {

namespace {
const cplx I(0.0, 1.0);
constexpr double PI = 3.14159265358979323846;
constexpr double TWO_PI = 6.283185307179586477;
}

cplx log_relative_wronskian(const Potential& V, double t, cplx k, const solver_options& opt) {
    check_momentum(k);
    if (t < 0) throw invalid_argument_error("log_relative_wronskian: t must be >= 0");
    const double X = V.support_end();
    if (X <= 0) return 0.0;
    t = std::min(t, X);   // a_t is constant beyond the support
    if (t == 0) return 0.0;

    const cplx k2 = k * k;
    auto guard = [](const cplx* y) {
        if (std::abs(y[0]) > 1e8)
            throw pole_crossing_error("log_relative_wronskian: w blew up on the path");
    };

    // stage 1: bring w from the free edge down to t
    cplx state[2] = {I * k, 0.0};
    if (t < X) {
        auto rhs = [&](double s, const cplx* y, cplx* dy) {
            guard(y);
            dy[0] = V(s) - k2 - y[0] * y[0];
            dy[1] = 0.0;
        };
        rk45_propagate(rhs, 1, X, t, state, opt.ode_tol, V.breakpoints());
    }
    // stage 2: continue to 0 accumulating  I(0) = int_0^t V/(ik+w) dx
    auto rhs2 = [&](double s, const cplx* y, cplx* dy) {
        guard(y);
        const cplx denom = I * k + y[0];
        if (std::abs(denom) < 1e-10)
            throw pole_crossing_error("log_relative_wronskian: ik + w vanished on the path");
        dy[0] = V(s) - k2 - y[0] * y[0];
        dy[1] = -V(s) / denom;
    };
    state[1] = 0.0;
    rk45_propagate(rhs2, 2, t, 0.0, state, opt.ode_tol, V.breakpoints());
    guard(state);
    return state[1];
}

asymptotics_fit wronskian_asymptotics_fit(const Potential& V, double t,
                                          const std::vector<double>& kappas,
                                          const solver_options& opt) {
    std::vector<double> ks = kappas;
    if (ks.empty()) {
        const int n = 40;
        for (int i = 0; i < n; ++i)
            ks.push_back(20.0 * std::pow(10.0, i / (n - 1.0)));   // geometric 20..200
    }
    if (ks.size() < 4)
        throw invalid_argument_error("wronskian_asymptotics_fit: need at least 4 kappa values");

    std::vector<double> y(ks.size());
    parallel_for(ks.size(), [&](std::size_t i) {
        y[i] = std::real(log_relative_wronskian(V, t, I * ks[i], opt));
    });

    // basis 1/k, 1/k^3, 1/k^4, 1/k^5; classical Gram-Schmidt QR with column
    // normalization keeps the normal equations out of it
    const std::size_t m = ks.size(), nb = 4;
    const double pows[nb] = {1, 3, 4, 5};
    std::vector<std::vector<double>> A(nb, std::vector<double>(m));
    for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t i = 0; i < m; ++i) A[j][i] = std::pow(ks[i], -pows[j]);

    std::vector<std::vector<double>> Q = A;
    double R[nb][nb] = {};
    for (std::size_t j = 0; j < nb; ++j) {
        for (std::size_t p = 0; p < j; ++p) {
            double dot = 0;
            for (std::size_t i = 0; i < m; ++i) dot += Q[p][i] * Q[j][i];
            R[p][j] = dot;
            for (std::size_t i = 0; i < m; ++i) Q[j][i] -= dot * Q[p][i];
        }
        double nrm = 0;
        for (std::size_t i = 0; i < m; ++i) nrm += Q[j][i] * Q[j][i];
        nrm = std::sqrt(nrm);
        R[j][j] = nrm;
        if (nrm < 1e-13 * m)
            throw fit_conditioning_error("wronskian_asymptotics_fit: design matrix is "
                                         "numerically rank deficient");
        for (std::size_t i = 0; i < m; ++i) Q[j][i] /= nrm;
    }
    double qty[nb];
    for (std::size_t j = 0; j < nb; ++j) {
        qty[j] = 0;
        for (std::size_t i = 0; i < m; ++i) qty[j] += Q[j][i] * y[i];
    }
    double coef[nb];
    for (std::size_t j = nb; j-- > 0;) {
        double s = qty[j];
        for (std::size_t p = j + 1; p < nb; ++p) s -= R[j][p] * coef[p];
        if (std::abs(R[j][j]) < 1e-300)
            throw fit_conditioning_error("wronskian_asymptotics_fit: zero pivot");
        coef[j] = s / R[j][j];
    }
    return {coef[0], coef[1]};
}

cplx blaschke_log(std::vector<double> kappas0, std::vector<double> kappast, cplx k) {
    check_momentum(k);
    const std::size_t n = std::max(kappas0.size(), kappast.size());
    kappas0.resize(n, 0.0);
    kappast.resize(n, 0.0);
    cplx sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double kap = kappas0[j], lam = kappast[j];
        if (kap == lam) continue;   // F(k; lambda, lambda) = 0
        for (double mu : {kap, lam})
            if (mu > 0 && (std::abs(k - I * mu) < 1e-12 * (1 + mu) ||
                           std::abs(k + I * mu) < 1e-12 * (1 + mu)))
                throw evaluation_at_pole_error("blaschke_log: k at a factor pole/zero");
        const cplx ak = kap > 0 ? std::atan(kap / k) : cplx(0.0);
        const cplx al = lam > 0 ? std::atan(lam / k) : cplx(0.0);
        sum += 2.0 * I * (ak - al) - 2.0 * I * (kap - lam) / k;
    }
    return sum;
}

cplx g_t(const Potential& V, double t, cplx k, const std::vector<double>& kappas0,
         const std::vector<double>& kappast, const solver_options& opt,
         const g_t_options& gopt) {
    auto raw = [&](cplx kk) {
        return log_relative_wronskian(V, t, kk, opt) - blaschke_log(kappas0, kappast, kk);
    };
    const cplx probe = raw(I * gopt.kappa_big);
    const double n_shift = std::round(std::imag(probe) / TWO_PI);
    if (std::abs(n_shift) > 3 ||
        std::abs(std::imag(probe) - TWO_PI * n_shift) > gopt.reality_tol)
        throw branch_fix_error("g_t: reality normalization at i*kappa_big failed");
    return raw(k) - I * TWO_PI * n_shift;
}

cplx g_t(const Potential& V, double t, cplx k, const solver_options& opt,
         const g_t_options& gopt) {
    const EigenvalueList e0 = whole_line_eigenvalues(V, 0.0, opt);
    const EigenvalueList et = whole_line_eigenvalues(V, t, opt);
    return g_t(V, t, k, e0.kappas, et.kappas, opt, gopt);
}

namespace {

// log[T(xi,0)/T(xi,t)] with resonance points bridged by nudging xi
double log_T_ratio(const Potential& V, double xi, double t, const solver_options& opt) {
    auto val = [&](double kk) {
        return std::log(transmission(V, kk, 0.0, opt)) -
               std::log(transmission(V, kk, t, opt));
    };
    try {
        return val(xi);
    } catch (const resonance_proximity_error&) {
        const double d = 1e-7 * (1.0 + xi);
        return 0.5 * (val(xi - d) + val(xi + d));
    }
}

} // namespace

double poisson_identity_residual(const Potential& V, double t, double y0, double y1,
                                 const solver_options& opt, const q_config& cfg) {
    if (!(y0 > 0) || !(y1 > 0) || y0 == y1)
        throw invalid_argument_error("poisson_identity_residual: need distinct y0, y1 > 0");
    const EigenvalueList e0 = whole_line_eigenvalues(V, 0.0, opt);
    const EigenvalueList et = whole_line_eigenvalues(V, t, opt);
    const double lhs = std::real(g_t(V, t, I * y0, e0.kappas, et.kappas, opt)) -
                       y1 / y0 * std::real(g_t(V, t, I * y1, e0.kappas, et.kappas, opt));
    auto integrand = [&](double xi) {
        const double kernel = (y0 * y0 - y1 * y1) * xi * xi /
                              (y0 * (xi * xi + y0 * y0) * (xi * xi + y1 * y1)) / PI;
        return kernel * log_T_ratio(V, xi, t, opt);
    };
    const q_result rhs = scattering_integral(integrand, cfg, cfg.resolved_k_max(V));
    return std::abs(lhs - rhs.value);
}

double step_sum_rule_residual(const Potential& V, double t, double y,
                              const solver_options& opt, const q_config& cfg) {
    if (!(t >= 0) || !(y > 0))
        throw invalid_argument_error("step_sum_rule_residual: need t >= 0, y > 0");
    if (V.support_end() <= 0) return 0.0;

    const double lhs = V.l2_norm_sq(t) / 8.0;

    std::vector<double> k0 = whole_line_eigenvalues(V, 0.0, opt).kappas;
    std::vector<double> kt = whole_line_eigenvalues(V, t, opt).kappas;
    const std::size_t n = std::max(k0.size(), kt.size());
    k0.resize(n, 0.0);
    kt.resize(n, 0.0);
    double eig = 0;
    for (std::size_t j = 0; j < n; ++j)
        eig += (2.0 / 3.0) * (k0[j] * k0[j] * k0[j] - kt[j] * kt[j] * kt[j]);

    auto integrand = [&](double xi) {
        const double P = 4.0 * xi * xi * y * y * y * y /
                         ((xi * xi + 4.0 * y * y) * (xi * xi + y * y)) / PI;
        return P * (-log_T_ratio(V, xi, t, opt));   // log[T(xi,t)/T(xi,0)]
    };
    const q_result kernel = scattering_integral(integrand, cfg, cfg.resolved_k_max(V));
    return std::abs(lhs - eig - kernel.value);
}

std::string SumRuleReport::to_json() const {
    json_writer w;
    w.begin_object();
    w.field("lhs", lhs);
    w.field("eig_term", eig_term);
    w.field("szego_term", szego_term);
    w.field("residual", residual);
    w.field("tail_error", tail_error);
    w.field("flagged_resonances", static_cast<long long>(flagged_resonances));
    w.field("grid_meta", grid_meta);
    w.end_object();
    return w.str();
}

SumRuleReport fz_sum_rule_report(const Potential& V, const solver_options& opt,
                                 const q_config& cfg) {
    SumRuleReport rep;
    rep.lhs = V.l2_norm_sq(V.support_end()) / 8.0;
    rep.eig_term = (2.0 / 3.0) * lieb_thirring_sum(whole_line_eigenvalues(V, 0.0, opt));
    const q_result q = quasi_szego_Q(V, cfg, opt);
    rep.szego_term = q.value;
    rep.tail_error = q.tail_error;
    rep.flagged_resonances = q.flagged_resonances;
    rep.residual = rep.lhs - rep.eig_term - rep.szego_term;
    rep.grid_meta = "ode_tol=" + fmt_g17(opt.ode_tol) + " quad_tol=" + fmt_g17(cfg.quad_tol) +
                    " k_max=" + fmt_g17(cfg.resolved_k_max(V)) +
                    " scan_points=" + std::to_string(opt.scan_points);
    return rep;
}

} // namespace halfline
