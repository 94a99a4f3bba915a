#ifndef HALFLINE_SUMRULES_HPP
#define HALFLINE_SUMRULES_HPP

#include <string>
#include <vector>

#include "halfline/scattering.hpp"
#include "halfline/spectral.hpp"

namespace halfline {

/// log a_t(k), the branch continuous in t with log a_0 = 0, by integrating
/// d/dx log a_x = V (ik + w(k;x))^{-1} along the Riccati flow for w.
/// The result is analytic in k wherever the path avoids zeros of psi_+.
cplx log_relative_wronskian(const Potential& V, double t, cplx k,
                            const solver_options& opt = {});

/// Least-squares fit of log a_t(i kappa) ~ c1/kappa + c3/kappa^3 over a
/// geometric kappa grid (kappa^-4 and kappa^-5 nuisance terms absorb the
/// next orders).  Contract: c1 ~ -1/2 int_0^t V, c3 ~ 1/8 int_0^t V^2.
struct asymptotics_fit {
    double c1 = 0;
    double c3 = 0;
};
asymptotics_fit wronskian_asymptotics_fit(const Potential& V, double t,
                                          const std::vector<double>& kappas = {},
                                          const solver_options& opt = {});

/// log B_t(k) = sum_j F(k; kappa_j(0), kappa_j(t)) through the arctan form
/// F = 2i[atan(kappa/k) - atan(lambda/k)] - 2i(kappa-lambda)/k, which is the
/// integral of (4.8)-type derivative and hence the branch that vanishes at
/// infinity with no per-factor branch jumps.  Lists are zero-padded.
cplx blaschke_log(std::vector<double> kappas0, std::vector<double> kappast, cplx k);

/// g_t = log a_t - log B_t with the additive 2 pi i branch pinned by
/// requiring reality at k = i kappa_big.
struct g_t_options {
    double kappa_big = 100.0;
    double reality_tol = 1e-6;
};
cplx g_t(const Potential& V, double t, cplx k, const solver_options& opt = {},
         const g_t_options& gopt = {});
cplx g_t(const Potential& V, double t, cplx k, const std::vector<double>& kappas0,
         const std::vector<double>& kappast, const solver_options& opt = {},
         const g_t_options& gopt = {});

/// |LHS - RHS| of the Poisson-kernel identity between g_t on the imaginary
/// axis and the transmission ratio on the real axis.
double poisson_identity_residual(const Potential& V, double t, double y0, double y1,
                                 const solver_options& opt = {}, const q_config& cfg = {});

/// |lhs - eigenvalue step - kernel integral| of the step-by-step sum rule at
/// finite y; decreasing in y down to the quadrature floor.
double step_sum_rule_residual(const Potential& V, double t, double y,
                              const solver_options& opt = {}, const q_config& cfg = {});

struct SumRuleReport {
    double lhs = 0;          // 1/8 int V^2
    double eig_term = 0;     // 2/3 sum kappa_j^3 (whole line, t = 0)
    double szego_term = 0;   // Q
    double residual = 0;     // lhs - eig_term - szego_term
    double tail_error = 0;
    long flagged_resonances = 0;
    std::string grid_meta;

    std::string to_json() const;
};

SumRuleReport fz_sum_rule_report(const Potential& V, const solver_options& opt = {},
                                 const q_config& cfg = {});

} // namespace halfline

#endif
