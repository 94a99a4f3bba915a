#ifndef HALFLINE_SCHRODINGER_HPP
#define HALFLINE_SCHRODINGER_HPP

#include <complex>
#include <vector>

#include "halfline/ode.hpp"
#include "halfline/parallel.hpp"
#include "halfline/potential.hpp"

namespace halfline {

/// Integration / root-finding knobs shared by the spectral operations.
struct solver_options {
    double ode_tol = 1e-10;          // relative local tolerance of the steppers
    double pole_threshold = 1e-13;   // |psi| below this (times path scale) => pole
    int scan_points = 400;           // eigenvalue sign-scan resolution
    double bisect_tol = 1e-10;       // kappa bisection tolerance
};

/// Throws invalid_argument_error unless Im k >= 0 and k != 0.
void check_momentum(cplx k);

/// Jost solution values at x: psi_+(x,k) = e^{ikx} beyond the support.
struct JostData {
    cplx psi;
    cplx dpsi;
    double x;
    cplx k;
};

/// (psi_+, psi_+') by backward integration from exact free data at the
/// support edge; bit-exact free values for x >= support_end.
JostData jost(const Potential& V, cplx k, double x, const solver_options& opt = {});

/// w(k; x) = psi_+'(x,k) / psi_+(x,k), the m-function of [x,inf) in momentum.
/// For real k this is the boundary value w(k+i0; x) directly.
cplx weyl_w(const Potential& V, cplx k, double x, const solver_options& opt = {});

/// Same quantity through the Riccati flow dw/dx = k^2 - V - w^2 (independent
/// integration route; also the path that stays bounded for large Im k).
cplx riccati_w(const Potential& V, cplx k, double x, const solver_options& opt = {});

/// W(x,k) = e^{-ikx} psi_+' + ik e^{-ikx} psi_+  (Wronskian against e^{-ikx}).
cplx wronskian_W(const Potential& V, cplx k, double x, const solver_options& opt = {});

struct EigenvalueList {
    enum class op_kind { half_line_dirichlet, whole_line };
    std::vector<double> kappas;   // descending, eigenvalues are -kappa_j^2
    double t = 0;
    op_kind kind = op_kind::whole_line;

    std::vector<double> energies() const;   // ascending (most negative first)
};

/// kappa_j with psi_+(0, i kappa) = 0: bound states of the Dirichlet
/// half-line operator H.
EigenvalueList dirichlet_eigenvalues(const Potential& V, const solver_options& opt = {});

/// kappa_j(t) with W(t, i kappa) = 0: bound states of the whole-line
/// operator L_t (potential cut off below t).
EigenvalueList whole_line_eigenvalues(const Potential& V, double t,
                                      const solver_options& opt = {});

/// Parallel kernel: w(k_i + i0; x) over a real k grid.
std::vector<cplx> weyl_w_scan(const Potential& V, const std::vector<double>& ks, double x,
                              const solver_options& opt = {},
                              exec mode = default_exec());

namespace detail {
/// Backward pass with the scale-free initialization (1, ik) at the support
/// edge; returns the state at x and the running max of |psi| for pole tests.
/// Ratios and zero sets match the true Jost solution.
wave_state jost_scaled(const Potential& V, cplx k, double x, const solver_options& opt,
                       double* max_scale);
/// d/d kappa of the scaled psi(0, i kappa), central difference.
cplx dkappa_psi0(const Potential& V, double kappa, const solver_options& opt);
}

} // namespace halfline

#endif
