#ifndef HALFLINE_ODE_HPP
#define HALFLINE_ODE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace halfline {

using cplx = std::complex<double>;

/// State of the second-order system (psi, psi').
struct wave_state {
    cplx psi;
    cplx dpsi;
};

/// Propagate -psi'' + V psi = k^2 psi from x_from to x_to (either direction)
/// with an adaptive 4th-order Magnus scheme (two-point Gauss nodes, exact
/// 2x2 exponentials).  Exact in one step on any interval where V is constant;
/// near-k-independent step size on smooth V, which is what keeps the large-k
/// scattering quadratures affordable.  Step doubling controls the local error
/// at relative tolerance tol.  Integration restarts at the supplied
/// breakpoints.  max_scale reports the running max of |psi| (pole thresholds
/// are taken relative to it).
wave_state magnus_propagate(const std::function<double(double)>& V, cplx k2,
                            double x_from, double x_to, wave_state y, double tol,
                            const std::vector<double>& breakpoints,
                            double* max_scale = nullptr);

/// Adaptive Dormand-Prince 5(4) on a small vector of complex components.
/// Used for the Riccati flow and the relative-Wronskian quadrature where the
/// unknown itself (not a linear system) is propagated.  deriv(x, y, dydx).
/// stop(x, y) may veto continuation by throwing.
void rk45_propagate(const std::function<void(double, const cplx*, cplx*)>& deriv, int dim,
                    double x_from, double x_to, cplx* y, double tol,
                    const std::vector<double>& breakpoints);

} // namespace halfline

#endif
