#ifndef HALFLINE_QUADRATURE_HPP
#define HALFLINE_QUADRATURE_HPP

#include <functional>

#include "halfline/parallel.hpp"

namespace halfline {

struct quad_result {
    double value = 0;
    double error = 0;         // accumulated Kronrod error estimate
    bool converged = false;
    long evaluations = 0;
};

struct quad_options {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    // intervals whose error estimate is below this (times their length) are
    // not refined further; set to the integrand's noise floor when f is
    // built on ODE solves, so refinement does not chase roundoff
    double err_floor_per_len = 0;
    int max_intervals = 4000;
    int initial_intervals = 8;
    exec mode = exec::parallel;
};

/// Adaptive Gauss-Kronrod 7-15 on [a,b].  Refinement proceeds in waves: every
/// interval over its error budget is bisected and all new node evaluations of
/// a wave run through one parallel_for, summed in interval order afterwards
/// (identical results in serial and parallel mode).
quad_result integrate(const std::function<double(double)>& f, double a, double b,
                      const quad_options& opt = {});

struct tail_estimate {
    double A = 0;        // fitted f(k) ~ A k^{-p}
    double p = 0;
    double tail = 0;          // \int_K^inf of the fitted model
    double uncertainty = 0;   // estimated error of that extrapolation
    double sup_abs = 0;       // max |f| seen on the fit window
    bool decaying = true;
    bool negligible = false;  // samples at/below the absolute floor
};

/// Fit a power law to bin-averaged samples of f on [K/2, K] (averaging spans
/// several oscillation periods of scattering integrands) and integrate the
/// model over [K, inf).  The uncertainty combines the scatter of the bin
/// means around the model with a 1/K floor for oscillatory remainders.
tail_estimate fit_power_tail(const std::function<double(double)>& f, double K,
                             double floor_abs = 1e-15, exec mode = exec::parallel);

} // namespace halfline

#endif
