#ifndef HALFLINE_ERRORS_HPP
#define HALFLINE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace halfline {

/// Base class for all toolkit errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad user input (arguments, config values, file contents).
struct invalid_argument_error : error {
    using error::error;
};

/// CSV/JSON input that failed to parse; carries a 1-based line number.
struct parse_error : invalid_argument_error {
    parse_error(const std::string& what, long line_no)
        : invalid_argument_error(what + " (line " + std::to_string(line_no) + ")"),
          line(line_no) {}
    long line;
};

/// ODE step size underflowed; carries the x where integration stalled.
struct numeric_failure : error {
    numeric_failure(const std::string& what, double at)
        : error(what + " at x = " + std::to_string(at)), x(at) {}
    double x;
};

/// |psi_+| fell below threshold: k is at or near a bound-state pole/zero.
struct pole_proximity_error : error {
    using error::error;
};

/// Riccati trajectory blew up: a zero of psi_+ lies on the integration path.
struct pole_crossing_error : error {
    using error::error;
};

/// psi_+(0,k) ~ 0 at real k: a real resonance; nearby values are unreliable.
struct resonance_proximity_error : error {
    using error::error;
};

/// Fitted quadrature tail does not decay fast enough for the requested tolerance.
struct tail_not_decaying_error : error {
    using error::error;
};

/// g_t reality normalization failed for every 2\pi i shift within +-3.
struct branch_fix_error : error {
    using error::error;
};

/// Least-squares design matrix is numerically rank deficient.
struct fit_conditioning_error : error {
    using error::error;
};

/// Blaschke factor evaluated at one of its poles +-i kappa.
struct evaluation_at_pole_error : error {
    using error::error;
};

/// Point mass sits at the singularity of a principal-value kernel.
struct atom_at_singularity_error : error {
    using error::error;
};

/// Density d(rho)/d(rho_0) <= 0 on a positive-measure sample set.
struct nonpositive_density_error : error {
    using error::error;
};

} // namespace halfline

#endif
