// halfline: batch front-end for the half-line Schrodinger toolkit.
// Subcommands: spectrum | scatter | sumrule | conditions | export
// Exit codes: 0 ok, 1 config error, 2 numeric failure, 3 tolerance/flag failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "halfline/conditions.hpp"
#include "halfline/errors.hpp"
#include "halfline/json_out.hpp"
#include "halfline/measure.hpp"
#include "halfline/parallel.hpp"
#include "halfline/potential.hpp"
#include "halfline/scattering.hpp"
#include "halfline/spectral.hpp"
#include "halfline/sumrules.hpp"

using namespace halfline;

namespace {

struct run_config {
    Potential potential = Potential::zero();
    bool potential_is_measure = false;
    SignedMeasureNu measure;
    std::vector<double> k_grid;
    solver_options sopt;
    q_config qcfg;
    std::string out_dir = "out";
    bool plot = false;
};

std::vector<double> make_grid(double lo, double hi, int count, const std::string& scale) {
    if (count < 2) throw invalid_argument_error("k_grid.count must be >= 2");
    if (!(lo > 0) || !(hi > lo)) throw invalid_argument_error("k_grid needs 0 < min < max");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        g[i] = scale == "log" ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo);
    }
    return g;
}

run_config load_config(const std::string& path, const std::string& out_override,
                       double ode_tol_override, double quad_tol_override,
                       double kmax_override, bool plot_flag, int threads) {
    std::ifstream f(path);
    if (!f) throw invalid_argument_error("cannot open config: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_argument_error(std::string("config JSON: ") + e.what());
    }

    run_config rc;
    const auto pj = j.value("potential", nlohmann::json::object());
    const std::string kind = pj.value("kind", "square_well");
    const double h = pj.value("grid_step", 1e-3);
    if (kind == "square_well") {
        rc.potential = Potential::square_well(pj.value("depth", 0.0), pj.value("width", 0.0), h);
    } else if (kind == "gaussian_bump") {
        rc.potential = Potential::gaussian_bump(pj.value("amplitude", 0.0),
                                                pj.value("center", 1.0),
                                                pj.value("sigma", 0.5),
                                                pj.value("support_end", 8.0), h);
    } else if (kind == "csv") {
        rc.potential = Potential::from_csv(pj.value("path", ""), h);
    } else if (kind == "measure_json") {
        std::ifstream m(pj.value("path", std::string()));
        if (!m) throw invalid_argument_error("cannot open measure JSON");
        std::stringstream ss;
        ss << m.rdbuf();
        rc.measure = SignedMeasureNu::from_json(ss.str());
        rc.potential_is_measure = true;
    } else {
        throw invalid_argument_error("unknown potential.kind: " + kind);
    }

    const auto kj = j.value("k_grid", nlohmann::json::object());
    rc.k_grid = make_grid(kj.value("min", 1e-2), kj.value("max", 50.0), kj.value("count", 500),
                          kj.value("scale", "log"));

    const auto tj = j.value("tolerances", nlohmann::json::object());
    rc.sopt.ode_tol = tj.value("ode_tol", 1e-10);
    rc.qcfg.quad_tol = tj.value("quad_tol", 1e-8);
    if (ode_tol_override > 0) rc.sopt.ode_tol = ode_tol_override;
    if (quad_tol_override > 0) rc.qcfg.quad_tol = quad_tol_override;
    for (double tol : {rc.sopt.ode_tol, rc.qcfg.quad_tol})
        if (!(tol > 0) || tol > 1e-2)
            throw invalid_argument_error("tolerances must lie in (0, 1e-2]");

    rc.qcfg.k_max = j.value("kmax", 0.0);
    if (kmax_override > 0) rc.qcfg.k_max = kmax_override;
    rc.out_dir = j.value("out", std::string("out"));
    if (!out_override.empty()) rc.out_dir = out_override;
    rc.plot = j.value("plot", false) || plot_flag;

    const int th = threads > 0 ? threads : j.value("threads", 0);
    set_thread_count(th);
    if (th == 1) set_default_exec(exec::serial);
    return rc;
}

std::string path_join(const std::string& dir, const std::string& name) {
    return dir.empty() ? name : dir + "/" + name;
}

void ensure_dir(const std::string& dir) {
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw invalid_argument_error("cannot create output directory: " + dir);
}

int cmd_spectrum(const run_config& rc) {
    const EigenvalueList half = dirichlet_eigenvalues(rc.potential, rc.sopt);
    const EigenvalueList whole = whole_line_eigenvalues(rc.potential, 0.0, rc.sopt);
    const bool inter = interlacing_check(half, whole);

    csv_writer csv({"E", "density"});
    std::vector<double> Es, ds;
    for (double k : rc.k_grid) {
        const double E = k * k;
        const double d = spectral_density(rc.potential, E, rc.sopt);
        csv.row({E, d});
        Es.push_back(E);
        ds.push_back(d);
    }
    write_file_atomic(path_join(rc.out_dir, "spectral_density.csv"), csv.str());

    json_writer w;
    w.begin_object();
    w.field("dirichlet_kappas", half.kappas);
    w.field("whole_line_kappas", whole.kappas);
    w.field("interlacing_ok", inter);
    w.field("lieb_thirring_whole_line", lieb_thirring_sum(whole));
    w.end_object();
    write_file_atomic(path_join(rc.out_dir, "spectrum_summary.json"), w.str());

    if (rc.plot)
        write_file_atomic(path_join(rc.out_dir, "spectral_density.svg"),
                          svg_line_chart("spectral density", Es, ds));
    std::cout << "spectrum: " << half.kappas.size() << " Dirichlet / " << whole.kappas.size()
              << " whole-line bound states, interlacing " << (inter ? "ok" : "VIOLATED")
              << "\n";
    return 0;
}

int cmd_scatter(const run_config& rc) {
    const auto pts = scattering_scan(rc.potential, rc.k_grid, 0.0, rc.sopt);
    csv_writer csv({"k", "re_w", "im_w", "T", "re_r", "im_r"});
    std::vector<double> ks, Ts;
    for (const auto& p : pts) {
        csv.row({p.k, std::real(p.w), std::imag(p.w), p.T, std::real(p.r), std::imag(p.r)});
        ks.push_back(p.k);
        Ts.push_back(p.T);
    }
    write_file_atomic(path_join(rc.out_dir, "scattering.csv"), csv.str());
    if (rc.plot)
        write_file_atomic(path_join(rc.out_dir, "transmission.svg"),
                          svg_line_chart("T(k)", ks, Ts));
    std::cout << "scatter: " << pts.size() << " points\n";
    return 0;
}

int cmd_sumrule(const run_config& rc) {
    const SumRuleReport rep = fz_sum_rule_report(rc.potential, rc.sopt, rc.qcfg);
    bool ok = std::abs(rep.residual) <= 1e-3 * std::max(rep.lhs, 1e-12);

    const double X = rc.potential.support_end();
    json_writer w;
    w.begin_object();
    w.key("faddeev_zakharov").begin_object();
    w.field("lhs", rep.lhs);
    w.field("eig_term", rep.eig_term);
    w.field("szego_term", rep.szego_term);
    w.field("residual", rep.residual);
    w.field("tail_error", rep.tail_error);
    w.field("grid_meta", rep.grid_meta);
    w.end_object();

    w.key("poisson_identity").begin_array();
    for (auto [y0, y1] : {std::pair{2.0, 3.0}, std::pair{1.0, 4.0}}) {
        const double res = X > 0
            ? poisson_identity_residual(rc.potential, X, y0, y1, rc.sopt, rc.qcfg) : 0.0;
        w.begin_object();
        w.field("y0", y0);
        w.field("y1", y1);
        w.field("residual", res);
        w.end_object();
        ok = ok && res <= 1e-4;
    }
    w.end_array();

    w.key("step_sum_rule").begin_array();
    for (double tfrac : {0.5, 1.0}) {
        const double t = tfrac * X;
        double prev = -1;
        for (double y : {5.0, 10.0, 20.0, 50.0}) {
            const double res =
                X > 0 ? step_sum_rule_residual(rc.potential, t, y, rc.sopt, rc.qcfg) : 0.0;
            w.begin_object();
            w.field("t", t);
            w.field("y", y);
            w.field("residual", res);
            w.end_object();
            if (y == 50.0) {
                ok = ok && res <= 1e-3 * std::max(rc.potential.l2_norm_sq(t) / 8.0, 1e-12);
                if (prev >= 0) ok = ok && res < prev + 1e-12;
            }
            if (y == 5.0) prev = res;
        }
    }
    w.end_array();
    w.field("tolerances_met", ok);
    w.end_object();
    write_file_atomic(path_join(rc.out_dir, "sumrule_report.json"), w.str());

    if (rc.plot && X > 0) {
        // integrand samples of the szego term, for eyeballing the tail
        csv_writer ic({"k", "integrand"});
        std::vector<double> ks, fs;
        for (double k = 0.02; k <= rc.qcfg.resolved_k_max(rc.potential); k *= 1.02) {
            try {
                const double f = -std::log(transmission(rc.potential, k, 0.0, rc.sopt)) *
                                 k * k / M_PI;
                ic.row({k, f});
                ks.push_back(k);
                fs.push_back(f);
            } catch (const resonance_proximity_error&) {
            }
        }
        write_file_atomic(path_join(rc.out_dir, "sumrule_integrand.csv"), ic.str());
        write_file_atomic(path_join(rc.out_dir, "sumrule_integrand.svg"),
                          svg_line_chart("-log T(k) k^2 / pi", ks, fs));
    }
    std::cout << "sumrule: residual " << fmt_g17(rep.residual) << " (lhs " << fmt_g17(rep.lhs)
              << "), tolerances " << (ok ? "met" : "NOT met") << "\n";
    return ok ? 0 : 3;
}

int cmd_conditions(const run_config& rc) {
    const ConditionsReport rep = rc.potential_is_measure
                                     ? conditions_report(rc.measure)
                                     : conditions_report(rc.potential, rc.sopt, rc.qcfg);
    write_file_atomic(path_join(rc.out_dir, "conditions_report.json"), rep.to_json());
    write_file_atomic(path_join(rc.out_dir, "conditions_table.txt"), rep.to_table());
    std::cout << rep.to_table();
    return rep.all_pass() ? 0 : 3;
}

int cmd_export(const run_config& rc) {
    csv_writer csv({"x", "V"});
    std::vector<double> xs, vs;
    const double X = rc.potential.support_end();
    const double h = rc.potential.grid_step();
    for (double x = 0.0; x <= X + 1e-12; x += h) {
        csv.row({x, rc.potential(x)});
        xs.push_back(x);
        vs.push_back(rc.potential(x));
    }
    write_file_atomic(path_join(rc.out_dir, "potential.csv"), csv.str());

    std::vector<double> kg;
    for (double k : rc.k_grid)
        if (k > 1.0) kg.push_back(k);
    if (kg.size() >= 2) {
        const SignedMeasureNu nu = nu_from_potential(rc.potential, kg, rc.sopt);
        write_file_atomic(path_join(rc.out_dir, "nu_measure.json"), nu.to_json());
    }
    std::vector<double> Eg;
    for (double k : rc.k_grid) Eg.push_back(k * k);
    const SpectralMeasure rho = spectral_measure_from_potential(rc.potential, Eg, rc.sopt);
    write_file_atomic(path_join(rc.out_dir, "spectral_measure.json"), rho.to_json());
    if (rc.plot)
        write_file_atomic(path_join(rc.out_dir, "potential.svg"),
                          svg_line_chart("V(x)", xs, vs));
    std::cout << "export: wrote potential.csv, nu_measure.json, spectral_measure.json\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-line Schrodinger spectral toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    double ode_tol = 0, quad_tol = 0, kmax = 0;
    bool plot = false;
    int threads = 0;
    app.add_option("--config", config_path, "run configuration JSON")->required();
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--ode-tol", ode_tol, "ODE tolerance override");
    app.add_option("--quad-tol", quad_tol, "quadrature tolerance override");
    app.add_option("--kmax", kmax, "quadrature upper cutoff override");
    app.add_option("--threads", threads, "worker threads (1 = serial)");
    app.add_flag("--plot", plot, "write SVG diagnostics");

    auto* sub_spectrum = app.add_subcommand("spectrum", "eigenvalues + spectral density");
    auto* sub_scatter = app.add_subcommand("scatter", "w, T, r over the k grid");
    auto* sub_sumrule = app.add_subcommand("sumrule", "sum-rule verification report");
    auto* sub_conditions = app.add_subcommand("conditions", "measure-condition report");
    auto* sub_export = app.add_subcommand("export", "potential / measure artifacts");

    CLI11_PARSE(app, argc, argv);

    try {
        const run_config rc =
            load_config(config_path, out_dir, ode_tol, quad_tol, kmax, plot, threads);
        ensure_dir(rc.out_dir);
        if (rc.potential_is_measure && !sub_conditions->parsed())
            throw invalid_argument_error(
                "measure_json inputs are only supported by the conditions subcommand");
        if (sub_spectrum->parsed()) return cmd_spectrum(rc);
        if (sub_scatter->parsed()) return cmd_scatter(rc);
        if (sub_sumrule->parsed()) return cmd_sumrule(rc);
        if (sub_conditions->parsed()) return cmd_conditions(rc);
        if (sub_export->parsed()) return cmd_export(rc);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const invalid_argument_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
