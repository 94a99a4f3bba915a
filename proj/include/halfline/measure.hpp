#ifndef HALFLINE_MEASURE_HPP
#define HALFLINE_MEASURE_HPP

#include <vector>

#include "halfline/spectral.hpp"

namespace halfline {

enum class maximal_mode { M, Ms, Ml };    // all scales / L <= 1 / L >= 1
enum class hilbert_mode { H, Hs, Hl };    // 1/(pi x) kernel and its short/long split

/// Signed measure on R as piecewise-constant density plus point masses.
/// Interval masses are linear in the interval endpoints, which is what makes
/// the maximal-function suprema attainable on a finite candidate set and the
/// Hilbert kernels integrable in closed form per cell.
class PiecewiseMeasure {
  public:
    struct Atom {
        double pos;
        double weight;
    };

    PiecewiseMeasure() = default;
    PiecewiseMeasure(std::vector<double> edges, std::vector<double> density,
                     std::vector<Atom> atoms);

    /// Cells centered on the samples of a SignedMeasureNu grid.
    static PiecewiseMeasure from_nu(const SignedMeasureNu& nu);

    const std::vector<double>& edges() const { return edges_; }
    const std::vector<double>& density() const { return density_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    double lo() const;
    double hi() const;
    bool empty() const { return density_.empty() && atoms_.empty(); }

    /// nu([a,b]) with sign; atoms on the closed interval.
    double signed_mass(double a, double b) const;
    /// |nu|([a,b]), closed interval.
    double tv_mass(double a, double b) const;
    /// |nu|([a,b)), half-open (the ell^2(M) cell convention).
    double tv_mass_halfopen(double a, double b) const;
    double total_variation() const;

    /// Exact Hardy-Littlewood maximal value at x for the given scale range.
    /// +inf at an atom for modes M and Ms.
    double maximal(double x, maximal_mode mode) const;

    /// Hilbert transform at x: closed-form cell integrals; the principal
    /// value is realized as the symmetric eps-exclusion limit, evaluated on
    /// the eps-ladder {1e-2,1e-3,1e-4} and Richardson-extrapolated.
    double hilbert(double x, hilbert_mode mode) const;

    /// Single symmetric-exclusion evaluation (density part excludes |x-s|<eps
    /// for the singular kernels; atoms always contribute their kernel value).
    double hilbert_eps(double x, hilbert_mode mode, double eps) const;

    /// |nu|([n, n+1)) for integer n over [n_lo, n_hi).
    std::vector<double> cell_masses(long n_lo, long n_hi) const;

    /// a.c. density at x (atoms not included); one-sided mean on an edge.
    double density_at(double x) const;

    /// Mirror through 0 with negated weights and append (odd extension);
    /// turns the momentum integral (2/pi) PV int xi d nu/(xi^2-k^2) into a
    /// plain Hilbert transform.
    PiecewiseMeasure odd_extension() const;

  private:
    void build_prefix();
    double cells_tv_upto(double x) const;       // |density part|((-inf, x])
    double cells_signed_upto(double x) const;
    double atoms_tv_upto(double x, bool closed) const;
    double atoms_signed_upto(double x, bool closed) const;

    std::vector<double> edges_;     // ascending, size n+1 (empty or >= 2)
    std::vector<double> density_;   // size n
    std::vector<Atom> atoms_;       // ascending by pos
    std::vector<double> tv_prefix_;       // cumulative |d|*len at edges
    std::vector<double> signed_prefix_;   // cumulative d*len at edges
    std::vector<double> atom_tv_prefix_;
    std::vector<double> atom_signed_prefix_;
};

/// ||nu||_{ell^2(M)}^2 = sum over integer cells of |nu|([n,n+1))^2.
double ell2m_norm_sq(const PiecewiseMeasure& nu);
double ell2m_norm_sq(const SignedMeasureNu& nu);

} // namespace halfline

#endif
