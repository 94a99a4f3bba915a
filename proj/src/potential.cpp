#include "halfline/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "halfline/errors.hpp"

namespace halfline {

namespace {

bool finite(double v) { return std::isfinite(v); }

// Composite Simpson over samples f_0..f_n on step h (n intervals).
// Odd interval count is handled with a 3/8 rule on the last three.
double simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.empty() ? 0 : f.size() - 1;
    if (n == 0) return 0.0;
    if (n == 1) return 0.5 * h * (f[0] + f[1]);
    std::size_t m = n;
    double tail = 0.0;
    if (n % 2 != 0) {
        m = n - 3;
        tail = 3.0 * h / 8.0 * (f[m] + 3 * f[m + 1] + 3 * f[m + 2] + f[m + 3]);
    }
    double s = 0.0;
    if (m >= 2) {
        s = f[0] + f[m];
        for (std::size_t i = 1; i < m; i += 2) s += 4 * f[i];
        for (std::size_t i = 2; i < m; i += 2) s += 2 * f[i];
        s *= h / 3.0;
    } else if (m == 1) {
        s = 0.5 * h * (f[0] + f[1]);
    }
    return s + tail;
}

} // namespace

double Potential::analytic(double x) const {
    switch (kind_) {
        case kind::square_well:
            return x <= width_ ? -depth_ : 0.0;
        case kind::gaussian_bump: {
            const double u = (x - center_) / sigma_;
            return amp_ * std::exp(-0.5 * u * u);
        }
        case kind::tabulated: {
            if (tab_x_.empty()) return 0.0;
            auto it = std::upper_bound(tab_x_.begin(), tab_x_.end(), x);
            if (it == tab_x_.begin()) return tab_v_.front();
            if (it == tab_x_.end()) return tab_v_.back();
            const std::size_t j = static_cast<std::size_t>(it - tab_x_.begin());
            const double x0 = tab_x_[j - 1], x1 = tab_x_[j];
            const double t = (x1 > x0) ? (x - x0) / (x1 - x0) : 0.0;
            return tab_v_[j - 1] + t * (tab_v_[j] - tab_v_[j - 1]);
        }
    }
    return 0.0;
}

double Potential::operator()(double x) const {
    if (x > support_end_ || x < 0.0) return 0.0;
    return analytic(x);
}

void Potential::resample() {
    const std::size_t n = static_cast<std::size_t>(std::floor(support_end_ / grid_step_ + 0.5)) + 1;
    values_.resize(std::max<std::size_t>(n, 1));
    for (std::size_t i = 0; i < values_.size(); ++i) {
        double x = static_cast<double>(i) * grid_step_;
        if (x > support_end_) x = support_end_;
        values_[i] = analytic(x);
    }
}

Potential Potential::square_well(double depth, double width, double grid_step) {
    if (!finite(depth) || !finite(width) || !finite(grid_step) || depth < 0 || width < 0 ||
        grid_step <= 0)
        throw invalid_argument_error("square_well: depth/width must be >= 0 and grid_step > 0");
    Potential p;
    p.kind_ = kind::square_well;
    if (depth == 0.0) width = 0.0;   // degenerate well == zero potential
    p.depth_ = depth;
    p.width_ = width;
    p.support_end_ = width;
    p.grid_step_ = grid_step;
    if (width > 0) p.breakpoints_ = {width};
    p.resample();
    return p;
}

Potential Potential::square_barrier(double height, double width, double grid_step) {
    if (!finite(height) || height < 0)
        throw invalid_argument_error("square_barrier: height must be >= 0");
    Potential p = square_well(height, width, grid_step);
    p.depth_ = -p.depth_;
    p.resample();
    return p;
}

Potential Potential::gaussian_bump(double amplitude, double center, double sigma,
                                   double support_end, double grid_step) {
    if (!finite(amplitude) || !finite(center) || !finite(sigma) || !finite(support_end) ||
        center <= 0 || sigma <= 0 || grid_step <= 0 || support_end <= center)
        throw invalid_argument_error("gaussian_bump: need center > 0, sigma > 0, "
                                     "support_end > center, grid_step > 0");
    const double u = (support_end - center) / sigma;
    const double tail = std::abs(amplitude) * std::exp(-0.5 * u * u);
    if (tail > 1e-12 * std::abs(amplitude))
        throw invalid_argument_error("gaussian_bump: tail at support_end exceeds 1e-12*|amplitude|; "
                                     "enlarge support_end");
    Potential p;
    p.kind_ = kind::gaussian_bump;
    p.amp_ = amplitude;
    p.center_ = center;
    p.sigma_ = sigma;
    p.support_end_ = amplitude == 0.0 ? 0.0 : support_end;
    p.grid_step_ = grid_step;
    p.resample();
    return p;
}

Potential Potential::zero() {
    Potential p;
    p.kind_ = kind::square_well;
    p.support_end_ = 0.0;
    p.grid_step_ = 1e-3;
    p.values_ = {0.0};
    return p;
}

Potential Potential::from_csv(const std::string& path, double grid_step) {
    if (grid_step <= 0) throw invalid_argument_error("from_csv: grid_step must be > 0");
    std::ifstream f(path);
    if (!f) throw invalid_argument_error("cannot open potential CSV: " + path);
    std::vector<double> xs, vs;
    std::string line;
    long lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::replace(trimmed.begin(), trimmed.end(), ',', ' ');
        std::istringstream ss(trimmed);
        double x, v;
        if (!(ss >> x >> v)) {
            if (lineno == 1 && xs.empty()) continue;   // optional header row
            throw parse_error("malformed potential CSV row: '" + line + "'", lineno);
        }
        if (!finite(x) || !finite(v))
            throw parse_error("non-finite value in potential CSV", lineno);
        if (!xs.empty() && x <= xs.back())
            throw parse_error("potential CSV x values must be strictly increasing", lineno);
        xs.push_back(x);
        vs.push_back(v);
    }
    if (xs.empty()) throw parse_error("potential CSV has no data rows", lineno);
    if (xs.front() < 0) throw parse_error("potential CSV x must start at >= 0", 1);

    Potential p;
    p.kind_ = kind::tabulated;
    p.tab_x_ = std::move(xs);
    p.tab_v_ = std::move(vs);
    p.support_end_ = p.tab_x_.back();
    p.grid_step_ = grid_step;
    p.resample();
    return p;
}

double Potential::integral(double t) const {
    if (t < 0) throw invalid_argument_error("integral: t must be >= 0");
    if (!finite(t)) t = support_end_;
    t = std::min(t, support_end_);
    if (t <= 0) return 0.0;
    if (kind_ == kind::square_well) return -depth_ * std::min(t, width_);

    const std::size_t m = static_cast<std::size_t>(std::floor(t / grid_step_));
    const std::size_t mm = std::min(m, values_.size() - 1);
    std::vector<double> head(values_.begin(), values_.begin() + static_cast<long>(mm) + 1);
    double s = simpson(head, grid_step_);
    const double x_m = static_cast<double>(mm) * grid_step_;
    if (t > x_m) {
        const double h2 = t - x_m;
        s += h2 / 6.0 * (analytic(x_m) + 4 * analytic(x_m + 0.5 * h2) + analytic(t));
    }
    return s;
}

double Potential::l2_norm_sq(double t) const {
    if (t < 0) throw invalid_argument_error("l2_norm_sq: t must be >= 0");
    if (!finite(t)) t = support_end_;
    t = std::min(t, support_end_);
    if (t <= 0) return 0.0;
    if (kind_ == kind::square_well) return depth_ * depth_ * std::min(t, width_);

    const std::size_t m = static_cast<std::size_t>(std::floor(t / grid_step_));
    const std::size_t mm = std::min(m, values_.size() - 1);
    std::vector<double> head(mm + 1);
    for (std::size_t i = 0; i <= mm; ++i) head[i] = values_[i] * values_[i];
    double s = simpson(head, grid_step_);
    const double x_m = static_cast<double>(mm) * grid_step_;
    if (t > x_m) {
        const double h2 = t - x_m;
        auto sq = [&](double x) { double v = analytic(x); return v * v; };
        s += h2 / 6.0 * (sq(x_m) + 4 * sq(x_m + 0.5 * h2) + sq(t));
    }
    return s;
}

double Potential::min_value() const {
    double m = 0.0;
    for (double v : values_) m = std::min(m, v);
    return m;
}

double Potential::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

Potential Potential::truncate(double R) const {
    if (R < 0) throw invalid_argument_error("truncate: R must be >= 0");
    Potential p = *this;
    p.support_end_ = std::min(R, support_end_);
    if (kind_ == kind::square_well) {
        p.width_ = std::min(width_, p.support_end_);
        if (p.width_ == 0.0) p.depth_ = 0.0;
        p.breakpoints_.clear();
        if (p.width_ > 0) p.breakpoints_ = {p.width_};
    } else {
        p.breakpoints_.clear();
        for (double b : breakpoints_)
            if (b < p.support_end_) p.breakpoints_.push_back(b);
    }
    p.resample();
    return p;
}

bool Potential::sample_equal(const Potential& other) const {
    const double hi = std::max(support_end_, other.support_end_);
    const double h = std::min(grid_step_, other.grid_step_);
    const long n = static_cast<long>(std::ceil(hi / h)) + 2;
    for (long i = 0; i <= n; ++i) {
        const double x = static_cast<double>(i) * h;
        if ((*this)(x) != other(x)) return false;
    }
    return true;
}

} // namespace halfline
