#ifndef HALFLINE_POTENTIAL_HPP
#define HALFLINE_POTENTIAL_HPP

#include <string>
#include <vector>

namespace halfline {

/// A compactly supported, real-valued potential on [0, support_end], sampled
/// on the uniform grid x_i = i*grid_step and backed by an analytic generator
/// where one exists.  Queries beyond the support return exactly 0, which is
/// what lets Jost solutions start from exact free data at the support edge.
class Potential {
  public:
    enum class kind { square_well, gaussian_bump, tabulated };

    kind type() const { return kind_; }
    double support_end() const { return support_end_; }
    double grid_step() const { return grid_step_; }
    const std::vector<double>& values() const { return values_; }

    /// Point evaluation; exact 0 for x > support_end.
    double operator()(double x) const;

    /// x-locations where V is discontinuous (integrators restart there).
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    /// \int_0^t V(y) dy, composite Simpson on the stored grid
    /// (exact piecewise-constant splitting for wells).
    double integral(double t) const;

    /// \int_0^t V(y)^2 dy, same scheme.
    double l2_norm_sq(double t) const;

    double min_value() const;
    double max_abs() const;

    /// Restriction V^(R): V on [0, R], 0 beyond.
    Potential truncate(double R) const;

    bool sample_equal(const Potential& other) const;

    // factories
    static Potential square_well(double depth, double width, double grid_step);
    /// Repulsive counterpart: V(x) = +height on [0, width].
    static Potential square_barrier(double height, double width, double grid_step);
    static Potential gaussian_bump(double amplitude, double center, double sigma,
                                   double support_end, double grid_step);
    /// Two-column CSV (x, V(x)); optional header; strictly increasing x
    /// starting at 0.  Resampled onto a uniform grid by linear interpolation.
    static Potential from_csv(const std::string& path, double grid_step = 1e-3);
    static Potential zero();

  private:
    Potential() = default;
    void resample();
    double analytic(double x) const;

    kind kind_ = kind::tabulated;
    double support_end_ = 0;
    double grid_step_ = 1e-3;
    std::vector<double> values_;
    std::vector<double> breakpoints_;

    // generator parameters
    double depth_ = 0, width_ = 0;                    // square well
    double amp_ = 0, center_ = 0, sigma_ = 1;         // gaussian
    std::vector<double> tab_x_, tab_v_;               // tabulated source
};

} // namespace halfline

#endif
