#include "halfline/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "halfline/errors.hpp"

namespace halfline {

namespace {
constexpr double PI = 3.14159265358979323846;

double flog(double x, double a, double b) {   // int_a^b ds/(x-s)
    return std::log(std::abs(x - a)) - std::log(std::abs(x - b));
}

double flin(double x, double a, double b) {   // int_a^b (x-s) ds
    return 0.5 * ((x - a) * (x - a) - (x - b) * (x - b));
}

} // namespace

PiecewiseMeasure::PiecewiseMeasure(std::vector<double> edges, std::vector<double> density,
                                   std::vector<Atom> atoms)
    : edges_(std::move(edges)), density_(std::move(density)), atoms_(std::move(atoms)) {
    if (!edges_.empty() && edges_.size() != density_.size() + 1)
        throw invalid_argument_error("PiecewiseMeasure: need edges = density + 1");
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i] <= edges_[i - 1])
            throw invalid_argument_error("PiecewiseMeasure: edges must be ascending");
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.pos < b.pos; });
    build_prefix();
}

void PiecewiseMeasure::build_prefix() {
    tv_prefix_.assign(edges_.size(), 0.0);
    signed_prefix_.assign(edges_.size(), 0.0);
    for (std::size_t i = 0; i < density_.size(); ++i) {
        const double len = edges_[i + 1] - edges_[i];
        tv_prefix_[i + 1] = tv_prefix_[i] + std::abs(density_[i]) * len;
        signed_prefix_[i + 1] = signed_prefix_[i] + density_[i] * len;
    }
    atom_tv_prefix_.assign(atoms_.size() + 1, 0.0);
    atom_signed_prefix_.assign(atoms_.size() + 1, 0.0);
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        atom_tv_prefix_[i + 1] = atom_tv_prefix_[i] + std::abs(atoms_[i].weight);
        atom_signed_prefix_[i + 1] = atom_signed_prefix_[i] + atoms_[i].weight;
    }
}

double PiecewiseMeasure::cells_tv_upto(double x) const {
    if (edges_.empty() || x <= edges_.front()) return 0;
    if (x >= edges_.back()) return tv_prefix_.back();
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - edges_.begin()) - 1;
    return tv_prefix_[i] + std::abs(density_[i]) * (x - edges_[i]);
}

double PiecewiseMeasure::cells_signed_upto(double x) const {
    if (edges_.empty() || x <= edges_.front()) return 0;
    if (x >= edges_.back()) return signed_prefix_.back();
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - edges_.begin()) - 1;
    return signed_prefix_[i] + density_[i] * (x - edges_[i]);
}

double PiecewiseMeasure::atoms_tv_upto(double x, bool closed) const {
    auto cmp = [](const Atom& a, double v) { return a.pos < v; };
    auto it = closed ? std::upper_bound(atoms_.begin(), atoms_.end(), x,
                                        [](double v, const Atom& a) { return v < a.pos; })
                     : std::lower_bound(atoms_.begin(), atoms_.end(), x, cmp);
    return atom_tv_prefix_[static_cast<std::size_t>(it - atoms_.begin())];
}

double PiecewiseMeasure::atoms_signed_upto(double x, bool closed) const {
    auto cmp = [](const Atom& a, double v) { return a.pos < v; };
    auto it = closed ? std::upper_bound(atoms_.begin(), atoms_.end(), x,
                                        [](double v, const Atom& a) { return v < a.pos; })
                     : std::lower_bound(atoms_.begin(), atoms_.end(), x, cmp);
    return atom_signed_prefix_[static_cast<std::size_t>(it - atoms_.begin())];
}

PiecewiseMeasure PiecewiseMeasure::from_nu(const SignedMeasureNu& nu) {
    std::vector<double> edges, density;
    const auto& g = nu.k_grid;
    if (g.size() >= 2) {
        edges.resize(g.size() + 1);
        edges[0] = std::max(1.0 + 1e-12, g[0] - 0.5 * (g[1] - g[0]));
        for (std::size_t i = 1; i < g.size(); ++i) edges[i] = 0.5 * (g[i - 1] + g[i]);
        edges[g.size()] = g.back() + 0.5 * (g.back() - g[g.size() - 2]);
        density = nu.ac_density;
    }
    std::vector<Atom> atoms;
    for (const auto& pm : nu.point_masses) atoms.push_back({pm.first, pm.second});
    return PiecewiseMeasure(std::move(edges), std::move(density), std::move(atoms));
}

double PiecewiseMeasure::lo() const {
    double v = std::numeric_limits<double>::infinity();
    if (!edges_.empty()) v = edges_.front();
    if (!atoms_.empty()) v = std::min(v, atoms_.front().pos);
    return v;
}

double PiecewiseMeasure::hi() const {
    double v = -std::numeric_limits<double>::infinity();
    if (!edges_.empty()) v = edges_.back();
    if (!atoms_.empty()) v = std::max(v, atoms_.back().pos);
    return v;
}

double PiecewiseMeasure::signed_mass(double a, double b) const {
    if (b < a) return 0;
    return cells_signed_upto(b) - cells_signed_upto(a) +
           atoms_signed_upto(b, true) - atoms_signed_upto(a, false);
}

double PiecewiseMeasure::tv_mass(double a, double b) const {
    if (b < a) return 0;
    return cells_tv_upto(b) - cells_tv_upto(a) +
           atoms_tv_upto(b, true) - atoms_tv_upto(a, false);
}

double PiecewiseMeasure::tv_mass_halfopen(double a, double b) const {
    if (b <= a) return 0;
    return cells_tv_upto(b) - cells_tv_upto(a) +
           atoms_tv_upto(b, false) - atoms_tv_upto(a, false);
}

double PiecewiseMeasure::total_variation() const {
    double s = 0;
    for (std::size_t i = 0; i < density_.size(); ++i)
        s += std::abs(density_[i]) * (edges_[i + 1] - edges_[i]);
    for (const auto& at : atoms_) s += std::abs(at.weight);
    return s;
}

double PiecewiseMeasure::maximal(double x, maximal_mode mode) const {
    if (empty()) return 0;

    if (mode != maximal_mode::Ml) {
        for (const auto& at : atoms_)
            if (std::abs(at.pos - x) < 1e-15 && at.weight != 0)
                return std::numeric_limits<double>::infinity();
    }

    // Interval mass is piecewise linear in L with breakpoints exactly at the
    // distances from x to cell edges and atoms, so m(L)/2L is monotone
    // between them and the sup is attained on this candidate set.
    std::vector<double> cand;
    cand.reserve(edges_.size() + atoms_.size() + 1);
    auto admit = [&](double L) {
        if (L <= 0) return;
        if (mode == maximal_mode::Ms && L > 1.0) return;
        if (mode == maximal_mode::Ml && L < 1.0) return;
        cand.push_back(L);
    };
    for (double e : edges_) admit(std::abs(x - e));
    for (const auto& at : atoms_) admit(std::abs(x - at.pos));
    if (mode != maximal_mode::M) cand.push_back(1.0);

    double best = 0;
    if (mode != maximal_mode::Ml) {
        // L -> 0+ limit: mean of the one-sided densities at x
        double dl = 0, dr = 0;
        for (std::size_t i = 0; i < density_.size(); ++i) {
            if (edges_[i] < x && x <= edges_[i + 1]) dl = density_[i];
            if (edges_[i] <= x && x < edges_[i + 1]) dr = density_[i];
        }
        best = 0.5 * (std::abs(dl) + std::abs(dr));
    }
    for (double L : cand) best = std::max(best, tv_mass(x - L, x + L) / (2.0 * L));
    return best;
}

double PiecewiseMeasure::hilbert_eps(double x, hilbert_mode mode, double eps) const {
    double s = 0;

    // density part, closed forms per admissible region
    for (std::size_t i = 0; i < density_.size(); ++i) {
        const double d = density_[i];
        if (d == 0) continue;
        const double c0 = edges_[i], c1 = edges_[i + 1];
        auto log_piece = [&](double a, double b) {
            a = std::max(a, c0);
            b = std::min(b, c1);
            if (b > a) s += d / PI * flog(x, a, b);
        };
        auto lin_piece = [&](double a, double b, double sign) {
            a = std::max(a, c0);
            b = std::min(b, c1);
            if (b > a) s += sign * d / PI * flin(x, a, b);
        };
        switch (mode) {
            case hilbert_mode::H:
                log_piece(-std::numeric_limits<double>::infinity(), x - eps);
                log_piece(x + eps, std::numeric_limits<double>::infinity());
                break;
            case hilbert_mode::Hs:
                log_piece(x - 1, x - eps);
                log_piece(x + eps, x + 1);
                lin_piece(x - 1, x - eps, -1.0);
                lin_piece(x + eps, x + 1, -1.0);
                break;
            case hilbert_mode::Hl:
                lin_piece(x - 1, x + 1, +1.0);
                log_piece(-std::numeric_limits<double>::infinity(), x - 1);
                log_piece(x + 1, std::numeric_limits<double>::infinity());
                break;
        }
    }

    // atoms contribute their kernel value (no PV regularization applies)
    for (const auto& at : atoms_) {
        const double u = x - at.pos;
        const double au = std::abs(u);
        if (mode != hilbert_mode::Hl && au < 1e-12)
            throw atom_at_singularity_error("hilbert: point mass at the evaluation point");
        switch (mode) {
            case hilbert_mode::H: s += at.weight / (PI * u); break;
            case hilbert_mode::Hs:
                if (au < 1.0) s += at.weight / PI * (1.0 / u - u);
                break;
            case hilbert_mode::Hl:
                s += at.weight / PI * (au < 1.0 ? u : 1.0 / u);
                break;
        }
    }
    return s;
}

double PiecewiseMeasure::hilbert(double x, hilbert_mode mode) const {
    if (mode == hilbert_mode::Hl) return hilbert_eps(x, mode, 0.0);

    // Keep each exclusion window inside the current cell so the symmetric
    // cancellation is exact; the ladder then confirms eps-independence.
    double dist = std::numeric_limits<double>::infinity();
    for (double e : edges_) dist = std::min(dist, std::abs(x - e));
    const double cap = std::max(0.5 * dist, 1e-13);

    const double ladder[3] = {1e-2, 1e-3, 1e-4};
    double v[3];
    for (int i = 0; i < 3; ++i) v[i] = hilbert_eps(x, mode, std::min(ladder[i], cap));
    const double e1 = std::min(ladder[1], cap), e2 = std::min(ladder[2], cap);
    if (e1 == e2 || v[1] == v[2]) return v[2];
    const double slope = (v[1] - v[2]) / (e1 - e2);
    return v[2] - slope * e2;   // linear Richardson to eps -> 0
}

double PiecewiseMeasure::density_at(double x) const {
    if (edges_.empty() || x < edges_.front() || x > edges_.back()) return 0;
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - edges_.begin());
    if (i == 0) i = 1;
    if (i > density_.size()) i = density_.size();
    return density_[i - 1];
}

std::vector<double> PiecewiseMeasure::cell_masses(long n_lo, long n_hi) const {
    std::vector<double> out;
    for (long n = n_lo; n < n_hi; ++n)
        out.push_back(tv_mass_halfopen(static_cast<double>(n), static_cast<double>(n + 1)));
    return out;
}

PiecewiseMeasure PiecewiseMeasure::odd_extension() const {
    if (!empty() && lo() <= 0)
        throw invalid_argument_error("odd_extension: measure must live on (0, inf)");
    std::vector<double> edges, density;
    for (std::size_t i = edges_.size(); i-- > 0;) edges.push_back(-edges_[i]);
    for (std::size_t i = density_.size(); i-- > 0;) density.push_back(-density_[i]);
    edges.insert(edges.end(), edges_.begin(), edges_.end());
    density.push_back(0.0);   // gap cell between -lo and +lo
    density.insert(density.end(), density_.begin(), density_.end());
    std::vector<Atom> atoms;
    for (const auto& at : atoms_) atoms.push_back({-at.pos, -at.weight});
    atoms.insert(atoms.end(), atoms_.begin(), atoms_.end());
    if (edges_.empty()) {
        return PiecewiseMeasure({}, {}, std::move(atoms));
    }
    return PiecewiseMeasure(std::move(edges), std::move(density), std::move(atoms));
}

double ell2m_norm_sq(const PiecewiseMeasure& nu) {
    if (nu.empty()) return 0;
    const long n_lo = static_cast<long>(std::floor(nu.lo()));
    const long n_hi = static_cast<long>(std::ceil(nu.hi())) + 1;
    double s = 0;
    for (double m : nu.cell_masses(n_lo, n_hi)) s += m * m;
    return s;
}

double ell2m_norm_sq(const SignedMeasureNu& nu) {
    return ell2m_norm_sq(PiecewiseMeasure::from_nu(nu));
}

} // namespace halfline
