#include "halfline/spectral.hpp"

#include <cmath>

#include "halfline/errors.hpp"
#include "halfline/json_out.hpp"

#include "json.hpp"

namespace halfline {

namespace {
const cplx I(0.0, 1.0);
constexpr double PI = 3.14159265358979323846;

std::string measure_json(const std::vector<double>& grid, const std::vector<double>& density,
                         const std::vector<std::pair<double, double>>& masses) {
    json_writer w;
    w.begin_object();
    w.field("grid", grid);
    w.field("density", density);
    w.key("point_masses").begin_array();
    for (const auto& pm : masses)
        w.begin_array().value(pm.first).value(pm.second).end_array();
    w.end_array();
    w.end_object();
    return w.str();
}

void measure_from_json(const std::string& text, std::vector<double>& grid,
                       std::vector<double>& density,
                       std::vector<std::pair<double, double>>& masses) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_argument_error(std::string("measure JSON: ") + e.what());
    }
    grid = j.value("grid", std::vector<double>{});
    density = j.value("density", std::vector<double>{});
    masses.clear();
    if (j.contains("point_masses"))
        for (const auto& pm : j["point_masses"])
            masses.emplace_back(pm.at(0).get<double>(), pm.at(1).get<double>());
}

} // namespace

void SpectralMeasure::validate() const {
    if (energy_grid.size() != ac_density.size())
        throw invalid_argument_error("SpectralMeasure: grid/density size mismatch");
    for (std::size_t i = 0; i < energy_grid.size(); ++i) {
        if (energy_grid[i] <= 0) throw invalid_argument_error("SpectralMeasure: grid must be > 0");
        if (i && energy_grid[i] <= energy_grid[i - 1])
            throw invalid_argument_error("SpectralMeasure: grid must be ascending");
        if (ac_density[i] < 0) throw invalid_argument_error("SpectralMeasure: density < 0");
    }
    for (std::size_t i = 0; i < point_masses.size(); ++i) {
        if (point_masses[i].first >= 0 || point_masses[i].second <= 0)
            throw invalid_argument_error("SpectralMeasure: point masses need E < 0, weight > 0");
        if (i && point_masses[i].first <= point_masses[i - 1].first)
            throw invalid_argument_error("SpectralMeasure: point masses must ascend in E");
    }
}

std::string SpectralMeasure::to_json() const {
    return measure_json(energy_grid, ac_density, point_masses);
}

SpectralMeasure SpectralMeasure::from_json(const std::string& text) {
    SpectralMeasure m;
    measure_from_json(text, m.energy_grid, m.ac_density, m.point_masses);
    m.validate();
    return m;
}

void SignedMeasureNu::validate() const {
    if (k_grid.size() != ac_density.size())
        throw invalid_argument_error("SignedMeasureNu: grid/density size mismatch");
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        if (k_grid[i] <= 1.0)
            throw invalid_argument_error("SignedMeasureNu: k grid must lie in (1, inf)");
        if (i && k_grid[i] <= k_grid[i - 1])
            throw invalid_argument_error("SignedMeasureNu: grid must be ascending");
        // Im w >= 0 forces d(nu)/dk >= -k
        if (ac_density[i] < -k_grid[i] - 1e-9)
            throw invalid_argument_error("SignedMeasureNu: density below -k violates Im w >= 0");
    }
    for (const auto& pm : point_masses)
        if (pm.first <= 1.0)
            throw invalid_argument_error("SignedMeasureNu: point masses must sit in (1, inf)");
}

std::string SignedMeasureNu::to_json() const {
    return measure_json(k_grid, ac_density, point_masses);
}

SignedMeasureNu SignedMeasureNu::from_json(const std::string& text) {
    SignedMeasureNu m;
    measure_from_json(text, m.k_grid, m.ac_density, m.point_masses);
    m.validate();
    return m;
}

double rho0_density(double E) {
    if (!(E > 0)) throw invalid_argument_error("rho0_density: E must be > 0");
    return std::sqrt(E) / PI;
}

double spectral_density(const Potential& V, double E, const solver_options& opt) {
    if (!(E > 0)) throw invalid_argument_error("spectral_density: E must be > 0");
    try {
        const cplx w = weyl_w(V, cplx(std::sqrt(E), 0.0), 0.0, opt);
        return std::max(0.0, std::imag(w) / PI);
    } catch (const pole_proximity_error& e) {
        throw resonance_proximity_error(std::string("spectral_density: ") + e.what());
    }
}

SignedMeasureNu nu_from_potential(const Potential& V, const std::vector<double>& k_grid,
                                  const solver_options& opt, exec mode) {
    for (double k : k_grid)
        if (!(k > 1.0)) throw invalid_argument_error("nu_from_potential: grid must lie in (1, inf)");
    SignedMeasureNu nu;
    nu.k_grid = k_grid;
    nu.ac_density.resize(k_grid.size());
    parallel_for(k_grid.size(), [&](std::size_t i) {
        try {
            const cplx w = weyl_w(V, cplx(k_grid[i], 0.0), 0.0, opt);
            nu.ac_density[i] = std::imag(w) - k_grid[i];
        } catch (const pole_proximity_error& e) {
            throw resonance_proximity_error(std::string("nu_from_potential: ") + e.what());
        }
    }, mode);
    return nu;
}

double dirichlet_mass(const Potential& V, double kappa, const solver_options& opt) {
    const wave_state y0 = detail::jost_scaled(V, I * kappa, 0.0, opt, nullptr);
    const cplx dk = detail::dkappa_psi0(V, kappa, opt);
    const double mass = std::real(2.0 * kappa * y0.dpsi / dk);
    if (!(mass > 0))
        throw numeric_failure("dirichlet_mass: nonpositive residue (kappa not a root?)", kappa);
    return mass;
}

SpectralMeasure spectral_measure_from_potential(const Potential& V,
                                                const std::vector<double>& energy_grid,
                                                const solver_options& opt, exec mode) {
    SpectralMeasure m;
    m.energy_grid = energy_grid;
    m.ac_density.resize(energy_grid.size());
    parallel_for(energy_grid.size(), [&](std::size_t i) {
        m.ac_density[i] = spectral_density(V, energy_grid[i], opt);
    }, mode);
    const EigenvalueList eigs = dirichlet_eigenvalues(V, opt);
    for (auto it = eigs.kappas.rbegin(); it != eigs.kappas.rend(); ++it)
        m.point_masses.emplace_back(-(*it) * (*it), dirichlet_mass(V, *it, opt));
    m.validate();
    return m;
}

double lieb_thirring_sum(const EigenvalueList& eigs) {
    double s = 0;
    for (double k : eigs.kappas) s += k * k * k;
    return s;
}

bool interlacing_check(const EigenvalueList& half, const EigenvalueList& whole) {
    const std::vector<double> E = half.energies();
    const std::vector<double> E0 = whole.energies();
    for (std::size_t j = 0; j < E.size(); ++j) {
        if (j >= E0.size()) return false;       // E_j^(0) <= E_j needs a j-th whole-line level
        if (E0[j] > E[j]) return false;
        if (j + 1 < E0.size() && E[j] > E0[j + 1]) return false;
    }
    return true;
}

} // namespace halfline
