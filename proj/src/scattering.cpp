#include "halfline/scattering.hpp"

#include <cmath>

#include "halfline/errors.hpp"

namespace halfline {

namespace {
const cplx I(0.0, 1.0);
constexpr double PI = 3.14159265358979323846;
}

double transmission(const Potential& V, double k, double t, const solver_options& opt) {
    if (!(k > 0)) throw invalid_argument_error("transmission: k must be > 0");
    if (t >= V.support_end()) return 1.0;
    cplx w;
    try {
        w = weyl_w(V, cplx(k, 0.0), t, opt);
    } catch (const pole_proximity_error& e) {
        throw resonance_proximity_error(std::string("transmission: ") + e.what());
    }
    const double im = std::imag(w);
    if (!(im > 0))
        throw resonance_proximity_error("transmission: Im w <= 0 at real k (resonance)");
    const double tval = 4.0 * k * im / std::norm(w + I * k);
    return std::min(tval, 1.0);
}

cplx reflection(const Potential& V, double k, const solver_options& opt) {
    if (!(k > 0)) throw invalid_argument_error("reflection: k must be > 0");
    if (V.support_end() <= 0) return 0.0;
    cplx w;
    try {
        w = weyl_w(V, cplx(k, 0.0), 0.0, opt);
    } catch (const pole_proximity_error& e) {
        throw resonance_proximity_error(std::string("reflection: ") + e.what());
    }
    return (I * k - w) / (I * k + w);
}

ScatteringPoint scatter_point(const Potential& V, double k, double t,
                              const solver_options& opt) {
    ScatteringPoint p;
    p.k = k;
    if (t >= V.support_end()) {
        p.w = I * k;
        p.T = 1.0;
        p.r = 0.0;
        return p;
    }
    try {
        p.w = weyl_w(V, cplx(k, 0.0), t, opt);
    } catch (const pole_proximity_error& e) {
        throw resonance_proximity_error(std::string("scatter_point: ") + e.what());
    }
    p.T = 4.0 * k * std::imag(p.w) / std::norm(p.w + I * k);
    p.r = (I * k - p.w) / (I * k + p.w);
    return p;
}

std::vector<ScatteringPoint> scattering_scan(const Potential& V, const std::vector<double>& ks,
                                             double t, const solver_options& opt, exec mode) {
    std::vector<ScatteringPoint> out(ks.size());
    parallel_for(ks.size(), [&](std::size_t i) { out[i] = scatter_point(V, ks[i], t, opt); },
                 mode);
    return out;
}

double mobius_sup_bound(double eta) {
    if (!(eta >= 0 && eta < PI / 2))
        throw invalid_argument_error("mobius_sup_bound: eta must lie in [0, pi/2)");
    return std::sqrt((1.0 + std::sin(eta)) / (1.0 - std::sin(eta)));
}

double q_config::resolved_k_max(const Potential& V) const {
    if (k_max > 0) return k_max;
    return 60.0 * (1.0 + std::sqrt(V.max_abs()));
}

q_result scattering_integral(const std::function<double(double)>& integrand,
                             const q_config& cfg, double k_max, std::atomic<long>* flags) {
    q_result out;
    quad_options qo;
    qo.rel_tol = cfg.quad_tol;
    qo.abs_tol = 1e-14;
    qo.mode = cfg.mode;
    const quad_result body = integrate(integrand, cfg.k_min, k_max, qo);
    out.value = body.value;
    out.converged = body.converged;

    const tail_estimate te = fit_power_tail(integrand, k_max, 1e-15, cfg.mode);
    const double consequence = cfg.tail_tol * std::max(std::abs(out.value), 1.0);
    if (te.sup_abs * k_max <= 0.05 * consequence) {
        // tail is inconsequential even under a 1/k^2 envelope (or pure noise)
        out.tail_error = 0;
    } else if (!te.decaying) {
        throw tail_not_decaying_error("scattering integral tail does not decay; raise k_max");
    } else {
        double tail = te.tail, unc = te.uncertainty;
        if (te.p <= 3.0) {
            // Scattering integrands of compactly supported V fall off like
            // A/k^2 with an oscillation on top (the first moment of nu~ is
            // -1/2 int V).  A phase-averaged window mean of k^2 f pins the
            // exponent and beats extrapolating a fitted one.
            const double W = k_max / 5.0;
            quad_options qo2;
            qo2.rel_tol = 1e-6;
            qo2.mode = cfg.mode;
            const double Ahat =
                integrate([&](double k) { return integrand(k) * k * k; }, k_max - W, k_max,
                          qo2).value / W;
            tail = Ahat / k_max;
            unc = std::abs(tail) * (4.0 * (k_max / W) / k_max) +
                  0.1 * std::abs(tail - te.tail);
        }
        if (unc > consequence)
            throw tail_not_decaying_error("scattering integral tail cannot be estimated "
                                          "below the requested tolerance; raise k_max");
        out.value += tail;
        out.tail_error = unc;
    }
    if (flags) out.flagged_resonances = flags->load();
    return out;
}

q_result quasi_szego_Q(const Potential& V, const q_config& cfg, const solver_options& opt) {
    if (V.support_end() <= 0) return {};
    std::atomic<long> flags{0};
    // skip-and-interpolate at isolated resonance points: nudge k and average
    auto logT = [&](double k) {
        try {
            return std::log(transmission(V, k, 0.0, opt));
        } catch (const resonance_proximity_error&) {
            ++flags;
            const double d = 1e-7 * (1.0 + k);
            return 0.5 * (std::log(transmission(V, k - d, 0.0, opt)) +
                          std::log(transmission(V, k + d, 0.0, opt)));
        }
    };
    auto f = [&](double k) { return -logT(k) * k * k / PI; };
    return scattering_integral(f, cfg, cfg.resolved_k_max(V), &flags);
}

} // namespace halfline
