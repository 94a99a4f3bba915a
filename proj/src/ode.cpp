#include "halfline/ode.hpp"

#include <algorithm>
#include <cmath>

#include "halfline/errors.hpp"

namespace halfline {

namespace {

constexpr double sqrt3_over_6 = 0.28867513459481288;   // sqrt(3)/6

// exp of the traceless matrix [[c, h], [h*qbar, -c]] applied to y.
wave_state expm_apply(cplx c, double h, cplx qbar, wave_state y) {
    const cplx hh(h, 0.0);
    const cplx mu2 = c * c + hh * hh * qbar;
    const cplx mu = std::sqrt(mu2);
    cplx ch, shm;   // cosh(mu), sinh(mu)/mu
    if (std::abs(mu) > 1e-8) {
        ch = std::cosh(mu);
        shm = std::sinh(mu) / mu;
    } else {
        ch = 1.0 + mu2 * (0.5 + mu2 / 24.0);
        shm = 1.0 + mu2 * (1.0 / 6.0 + mu2 / 120.0);
    }
    wave_state out;
    out.psi = (ch + shm * c) * y.psi + shm * hh * y.dpsi;
    out.dpsi = shm * hh * qbar * y.psi + (ch - shm * c) * y.dpsi;
    return out;
}

// One Magnus-4 step of length h starting at x (h may be negative).
wave_state magnus_step(const std::function<double(double)>& V, cplx k2, double x, double h,
                       const wave_state& y) {
    const double x1 = x + h * (0.5 - sqrt3_over_6);
    const double x2 = x + h * (0.5 + sqrt3_over_6);
    const cplx q1 = V(x1) - k2;
    const cplx q2 = V(x2) - k2;
    const cplx qbar = 0.5 * (q1 + q2);
    const cplx c = (std::sqrt(3.0) / 12.0) * h * h * (q1 - q2);
    return expm_apply(c, h, qbar, y);
}

double weighted_norm(const wave_state& y, double kscale) {
    return std::abs(y.psi) + std::abs(y.dpsi) / kscale;
}

} // namespace

wave_state magnus_propagate(const std::function<double(double)>& V, cplx k2,
                            double x_from, double x_to, wave_state y, double tol,
                            const std::vector<double>& breakpoints, double* max_scale) {
    if (x_from == x_to) return y;
    const double dir = x_to > x_from ? 1.0 : -1.0;
    const double kscale = std::max(1.0, std::sqrt(std::abs(k2)));

    // segment ends: breakpoints strictly between x_from and x_to, walked in order
    std::vector<double> stops;
    for (double b : breakpoints) {
        if (dir > 0 ? (b > x_from && b < x_to) : (b < x_from && b > x_to)) stops.push_back(b);
    }
    std::sort(stops.begin(), stops.end());
    if (dir < 0) std::reverse(stops.begin(), stops.end());
    stops.push_back(x_to);

    double scale = std::max(std::abs(y.psi), 1e-300);
    double x = x_from;
    for (double seg_end : stops) {
        double h = seg_end - x;   // optimistic: constant-V segments succeed in one step
        while (dir * (seg_end - x) > 0) {
            if (std::abs(seg_end - x) <= 1e-14 * std::max(1.0, std::abs(x))) break;
            if (std::abs(h) > std::abs(seg_end - x)) h = seg_end - x;
            if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(x)))
                throw numeric_failure("magnus step size underflow", x);

            const wave_state full = magnus_step(V, k2, x, h, y);
            wave_state half = magnus_step(V, k2, x, 0.5 * h, y);
            half = magnus_step(V, k2, x + 0.5 * h, 0.5 * h, half);

            const double sc = std::max({weighted_norm(y, kscale), weighted_norm(half, kscale),
                                        1e-300});
            const double err = (std::abs(full.psi - half.psi) +
                                std::abs(full.dpsi - half.dpsi) / kscale) / sc;
            if (!std::isfinite(err)) {   // overflow inside the step: retry smaller
                h *= 0.1;
                continue;
            }
            if (err <= tol) {
                y = half;
                x += h;
                scale = std::max(scale, std::abs(y.psi));
                const double grow = err > 0 ? 0.9 * std::pow(tol / err, 0.2) : 4.0;
                h *= std::clamp(grow, 0.2, 4.0);
            } else {
                h *= std::clamp(0.9 * std::pow(tol / err, 0.2), 0.1, 0.9);
            }
        }
        x = seg_end;
    }
    if (max_scale) *max_scale = scale;
    return y;
}

void rk45_propagate(const std::function<void(double, const cplx*, cplx*)>& deriv, int dim,
                    double x_from, double x_to, cplx* y, double tol,
                    const std::vector<double>& breakpoints) {
    if (x_from == x_to) return;
    const double dir = x_to > x_from ? 1.0 : -1.0;

    // Dormand-Prince 5(4) tableau
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    std::vector<double> stops;
    for (double b : breakpoints)
        if (dir > 0 ? (b > x_from && b < x_to) : (b < x_from && b > x_to)) stops.push_back(b);
    std::sort(stops.begin(), stops.end());
    if (dir < 0) std::reverse(stops.begin(), stops.end());
    stops.push_back(x_to);

    constexpr int MAXD = 4;
    cplx k1[MAXD], k2[MAXD], k3[MAXD], k4[MAXD], k5[MAXD], k6[MAXD], k7[MAXD], yt[MAXD],
        y5[MAXD];

    double x = x_from;
    for (double seg_end : stops) {
        double h = (seg_end - x) / 16.0;
        if (h == 0) continue;
        while (dir * (seg_end - x) > 0) {
            if (std::abs(seg_end - x) <= 1e-14 * std::max(1.0, std::abs(x))) break;
            if (std::abs(h) > std::abs(seg_end - x)) h = seg_end - x;
            if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(x)))
                throw numeric_failure("rk45 step size underflow", x);

            deriv(x, y, k1);
            for (int i = 0; i < dim; ++i) yt[i] = y[i] + h * a21 * k1[i];
            deriv(x + h / 5, yt, k2);
            for (int i = 0; i < dim; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
            deriv(x + 3 * h / 10, yt, k3);
            for (int i = 0; i < dim; ++i)
                yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            deriv(x + 4 * h / 5, yt, k4);
            for (int i = 0; i < dim; ++i)
                yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            deriv(x + 8 * h / 9, yt, k5);
            for (int i = 0; i < dim; ++i)
                yt[i] = y[i] +
                        h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            deriv(x + h, yt, k6);
            for (int i = 0; i < dim; ++i)
                y5[i] = y[i] +
                        h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            deriv(x + h, y5, k7);

            double err = 0;
            for (int i = 0; i < dim; ++i) {
                const cplx de = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                     e6 * k6[i] + e7 * k7[i]);
                const double sc = 1e-12 + std::max(std::abs(y[i]), std::abs(y5[i]));
                err = std::max(err, std::abs(de) / sc);
            }
            if (!std::isfinite(err)) {
                h *= 0.1;
                continue;
            }
            if (err <= tol) {
                for (int i = 0; i < dim; ++i) y[i] = y5[i];
                x += h;
                const double grow = err > 0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
                h *= std::clamp(grow, 0.2, 5.0);
            } else {
                h *= std::clamp(0.9 * std::pow(tol / err, 0.2), 0.1, 0.9);
            }
        }
        x = seg_end;
    }
}

} // namespace halfline
