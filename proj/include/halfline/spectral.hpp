#ifndef HALFLINE_SPECTRAL_HPP
#define HALFLINE_SPECTRAL_HPP

#include <string>
#include <utility>
#include <vector>

#include "halfline/schrodinger.hpp"

namespace halfline {

/// dE-samples of the a.c. part of d(rho) plus its negative point masses.
struct SpectralMeasure {
    std::vector<double> energy_grid;                      // ascending, E > 0
    std::vector<double> ac_density;                       // d(rho)/dE samples
    std::vector<std::pair<double, double>> point_masses;  // (E_j < 0, weight > 0), ascending E

    std::string to_json() const;
    static SpectralMeasure from_json(const std::string& text);
    void validate() const;
};

/// The signed measure d(nu) on (1, inf): a.c. density in momentum plus
/// (for synthetic inputs) signed point masses.
struct SignedMeasureNu {
    std::vector<double> k_grid;                           // ascending, k > 1
    std::vector<double> ac_density;                       // d(nu)/dk = Im w(k+i0) - k
    std::vector<std::pair<double, double>> point_masses;  // (k_p > 1, signed weight)

    std::string to_json() const;
    static SignedMeasureNu from_json(const std::string& text);
    void validate() const;
};

/// Free a.c. density: d(rho_0)/dE = sqrt(E)/pi.
double rho0_density(double E);

/// d(rho)/dE = Im w(sqrt(E)+i0; 0) / pi.
double spectral_density(const Potential& V, double E, const solver_options& opt = {});

/// Sample d(nu)/dk on a grid in (1, inf); purely a.c. for compact support.
SignedMeasureNu nu_from_potential(const Potential& V, const std::vector<double>& k_grid,
                                  const solver_options& opt = {}, exec mode = default_exec());

/// Spectral measure of H: density samples plus Dirichlet point masses with
/// residue weights.
SpectralMeasure spectral_measure_from_potential(const Potential& V,
                                                const std::vector<double>& energy_grid,
                                                const solver_options& opt = {},
                                                exec mode = default_exec());

/// Residue weight rho({-kappa^2}) = 2 kappa psi_+'(0,i kappa) / d_kappa psi_+(0, i kappa).
double dirichlet_mass(const Potential& V, double kappa, const solver_options& opt = {});

/// Sum of kappa_j^3 = |E_j|^{3/2}.
double lieb_thirring_sum(const EigenvalueList& eigs);

/// E_j^(0) <= E_j <= E_{j+1}^(0) as ordered reals (vacuously true when empty).
bool interlacing_check(const EigenvalueList& half, const EigenvalueList& whole);

} // namespace halfline

#endif
