#ifndef HALFLINE_SCATTERING_HPP
#define HALFLINE_SCATTERING_HPP

#include <atomic>
#include <vector>

#include "halfline/quadrature.hpp"
#include "halfline/schrodinger.hpp"

namespace halfline {

struct ScatteringPoint {
    double k;
    cplx w;       // boundary value w(k+i0; t)
    double T;     // 4k Im w / |w+ik|^2
    cplx r;       // (ik - w)/(ik + w)
};

/// T(k,t) in (0,1]; throws resonance_proximity_error at real resonances.
double transmission(const Potential& V, double k, double t, const solver_options& opt = {});

/// r(k) = (ik - w)/(ik + w) at x = 0; |r| <= 1 on the real axis.
cplx reflection(const Potential& V, double k, const solver_options& opt = {});

ScatteringPoint scatter_point(const Potential& V, double k, double t,
                              const solver_options& opt = {});

/// Parallel kernel over a k grid (CSV export and the unitarity suite).
std::vector<ScatteringPoint> scattering_scan(const Potential& V, const std::vector<double>& ks,
                                             double t, const solver_options& opt = {},
                                             exec mode = default_exec());

/// sup over z in C_+ of |(ik - z)/(ik + z)| for k = |k| e^{i eta}.
double mobius_sup_bound(double eta);

/// Shared configuration of the scattering-type integrals
/// (Q, QS, SQS, R, the Poisson and step-by-step kernels).
struct q_config {
    double quad_tol = 1e-8;       // relative tolerance of the adaptive pass
    double k_min = 1e-4;          // left endpoint (integrands vanish like k^2 log k there)
    double k_max = 0;             // 0 = auto: 60 (1 + sqrt(sup|V|))
    double tail_tol = 2e-3;       // tail uncertainty above this => tail_not_decaying
    exec mode = exec::parallel;

    double resolved_k_max(const Potential& V) const;
};

struct q_result {
    double value = 0;
    double tail_error = 0;        // magnitude of the fitted tail added to value
    long flagged_resonances = 0;  // integrand points recovered by nudging k
    bool converged = true;
};

/// Q(V) = -(1/pi) int_0^inf log T(k,0) k^2 dk with adaptive quadrature and a
/// fitted power-law tail beyond k_max.
q_result quasi_szego_Q(const Potential& V, const q_config& cfg = {},
                       const solver_options& opt = {});

/// Generic driver used by the other entropy-type integrals: integrates
/// f(k) k^2-style integrands on (k_min, k_max) plus the fitted tail.
q_result scattering_integral(const std::function<double(double)>& integrand,
                             const q_config& cfg, double k_max,
                             std::atomic<long>* flags = nullptr);

} // namespace halfline

#endif
