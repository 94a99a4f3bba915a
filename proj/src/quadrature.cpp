#include "halfline/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace halfline {

namespace {

// Kronrod-15 abscissae on [0,1] (positive half) and weights; Gauss-7 weights.
const double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
const double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct interval {
    double a, b;
    double value = 0, err = 0;
};

// 15 evaluation points of an interval
void nodes_of(const interval& iv, double* xs) {
    const double c = 0.5 * (iv.a + iv.b), h = 0.5 * (iv.b - iv.a);
    for (int j = 0; j < 7; ++j) {
        xs[2 * j] = c - h * xgk[j];
        xs[2 * j + 1] = c + h * xgk[j];
    }
    xs[14] = c;
}

void gk15(interval& iv, const double* fv) {
    const double h = 0.5 * (iv.b - iv.a);
    double resk = wgk[7] * fv[14];
    double resg = wg[3] * fv[14];
    for (int j = 0; j < 7; ++j) {
        const double sum = fv[2 * j] + fv[2 * j + 1];
        resk += wgk[j] * sum;
        if (j % 2 == 1) resg += wg[j / 2] * sum;   // j=1,3,5 -> Gauss nodes
    }
    iv.value = resk * h;
    // |K15 - G7| bounds the Gauss error and overestimates the Kronrod one;
    // conservative but cheap.
    iv.err = std::abs(resk - resg) * std::abs(h);
}

} // namespace

quad_result integrate(const std::function<double(double)>& f, double a, double b,
                      const quad_options& opt) {
    quad_result res;
    if (!(b > a)) { res.converged = true; return res; }

    std::vector<interval> ivs;
    const int n0 = std::max(1, opt.initial_intervals);
    ivs.reserve(static_cast<std::size_t>(opt.max_intervals) + 2);
    for (int i = 0; i < n0; ++i)
        ivs.push_back({a + (b - a) * i / n0, a + (b - a) * (i + 1) / n0});

    std::vector<std::size_t> pending(ivs.size());
    for (std::size_t i = 0; i < pending.size(); ++i) pending[i] = i;

    while (true) {
        // evaluate all pending intervals, 15 nodes each, one parallel sweep
        std::vector<double> fv(pending.size() * 15);
        parallel_for(pending.size(), [&](std::size_t pi) {
            double xs[15];
            nodes_of(ivs[pending[pi]], xs);
            for (int j = 0; j < 15; ++j) fv[pi * 15 + j] = f(xs[j]);
        }, opt.mode);
        for (std::size_t pi = 0; pi < pending.size(); ++pi)
            gk15(ivs[pending[pi]], &fv[pi * 15]);
        res.evaluations += static_cast<long>(pending.size()) * 15;

        double total = 0, err = 0;
        for (const auto& iv : ivs) { total += iv.value; err += iv.err; }
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (err <= target) {
            res.value = total;
            res.error = err;
            res.converged = true;
            return res;
        }
        if (static_cast<int>(ivs.size()) >= opt.max_intervals) {
            res.value = total;
            res.error = err;
            res.converged = false;
            return res;
        }

        // split every interval above its per-length share of the budget
        pending.clear();
        const double len_total = b - a;
        std::vector<interval> next;
        next.reserve(ivs.size() * 2);
        bool split_any = false;
        for (const auto& iv : ivs) {
            const double share = target * (iv.b - iv.a) / len_total;
            const bool split = iv.err > share &&
                               iv.err > opt.err_floor_per_len * (iv.b - iv.a) &&
                               static_cast<int>(next.size()) + 2 < opt.max_intervals &&
                               (iv.b - iv.a) > 1e-15 * std::max(1.0, std::abs(iv.b));
            if (split) {
                const double m = 0.5 * (iv.a + iv.b);
                pending.push_back(next.size());
                next.push_back({iv.a, m});
                pending.push_back(next.size());
                next.push_back({m, iv.b});
                split_any = true;
            } else {
                next.push_back(iv);
            }
        }
        if (!split_any) {
            double total2 = 0, err2 = 0;
            for (const auto& iv : next) { total2 += iv.value; err2 += iv.err; }
            res.value = total2;
            res.error = err2;
            res.converged = err2 <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total2));
            return res;
        }
        ivs.swap(next);
    }
}

tail_estimate fit_power_tail(const std::function<double(double)>& f, double K,
                             double floor_abs, exec mode) {
    tail_estimate te;
    const int N = 32, BINS = 4;
    std::vector<double> ks(N), fs(N);
    const double r = std::pow(2.0, 1.0 / (N - 1));   // geometric on [K/2, K]
    for (int i = 0; i < N; ++i) ks[i] = K / 2.0 * std::pow(r, i);
    parallel_for(static_cast<std::size_t>(N), [&](std::size_t i) { fs[i] = f(ks[i]); }, mode);

    for (double v : fs) te.sup_abs = std::max(te.sup_abs, std::abs(v));
    if (te.sup_abs <= floor_abs) {
        te.negligible = true;
        te.tail = 0;
        return te;
    }

    // bin means damp the oscillation of scattering integrands
    double lx[BINS], ly[BINS];
    int used = 0;
    for (int bin = 0; bin < BINS; ++bin) {
        double fm = 0, km = 0;
        for (int i = 0; i < N / BINS; ++i) {
            fm += fs[bin * (N / BINS) + i];
            km += std::log(ks[bin * (N / BINS) + i]);
        }
        fm /= N / BINS;
        km /= N / BINS;
        if (fm > floor_abs) {
            lx[used] = km;
            ly[used] = std::log(fm);
            ++used;
        }
    }
    if (used < 2) {
        // signed means cancelled: the tail oscillates around 0, bound it crudely
        te.negligible = true;
        te.tail = 0;
        te.uncertainty = te.sup_abs * K / 8.0;
        return te;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < used; ++i) {
        sx += lx[i]; sy += ly[i]; sxx += lx[i] * lx[i]; sxy += lx[i] * ly[i];
    }
    const double denom = used * sxx - sx * sx;
    const double slope = denom != 0 ? (used * sxy - sx * sy) / denom : 0.0;
    te.p = -slope;
    te.A = std::exp((sy - slope * sx) / used);
    if (te.p <= 1.05) {
        te.decaying = false;
        te.tail = std::numeric_limits<double>::infinity();
        te.uncertainty = std::numeric_limits<double>::infinity();
        return te;
    }
    te.tail = te.A * std::pow(K, 1.0 - te.p) / (te.p - 1.0);

    double scatter = 0;
    for (int i = 0; i < used; ++i) {
        const double res = ly[i] - ((sy - slope * sx) / used + slope * lx[i]);
        scatter += res * res;
    }
    scatter = std::sqrt(scatter / used);
    // oscillatory remainders integrate down by another 1/K; keep that floor
    te.uncertainty = te.tail * std::max(std::expm1(scatter), 3.0 / K);
    return te;
}

} // namespace halfline
