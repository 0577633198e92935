// Command-line driver: verification suites, parameter scans and mesh export
// for the PMC surface families of S^2 x H^2.
//
//   s2h2 verify --config suite.json --out report.json
//   s2h2 scan   --family curve_product --params "k_alpha=0:0.25:2;k_beta=vtheta" --out scan.csv
//   s2h2 mesh   --config suite.json --format obj_charts --out meshes/
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 configuration error.

#include "s2h2/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace s2h2;

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of PMC surfaces in S^2 x H^2"};
    app.require_subcommand(1);

    double fd_step = 1e-4, ode_step = 1e-3, tol_scale = 1.0;
    app.add_option("--fd-step", fd_step, "finite-difference step for first-order residuals");
    app.add_option("--ode-step", ode_step, "fixed RK4 step for curve/profile integration");
    app.add_option("--tol-scale", tol_scale, "multiply every check tolerance by this factor");

    std::string config_path, out_path, family, params, format = "obj_charts";

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--config", config_path, "suite configuration (JSON)")->required();
    verify->add_option("--out", out_path, "report output path (JSON)")->required();

    CLI::App* scan = app.add_subcommand("scan", "parameter sweep to CSV");
    scan->add_option("--family", family, "curve_product, special_1 or special_2")->required();
    scan->add_option("--params", params,
                     "semicolon-separated name=value | name=lo:step:hi | name=vtheta")
        ->required();
    scan->add_option("--out", out_path, "CSV output path")->required();

    CLI::App* mesh = app.add_subcommand("mesh", "export factor meshes / raw coordinates");
    mesh->add_option("--config", config_path, "suite configuration (JSON)")->required();
    mesh->add_option("--format", format, "obj_charts or csv6d");
    mesh->add_option("--out", out_path, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            SuiteConfig cfg = load_config(config_path);
            if (app.count("--fd-step")) cfg.fd_step = fd_step;
            if (app.count("--ode-step")) cfg.ode_step = ode_step;
            if (app.count("--tol-scale")) cfg.tol_scale = tol_scale;
            const SuiteReport rep = run_suite(cfg);
            std::ofstream out(out_path);
            if (!out) throw std::runtime_error("cannot write report: " + out_path);
            out << report_to_json(rep);
            for (const auto& s : rep.surfaces) {
                if (s.status != "ok") {
                    std::cout << s.name << ": " << s.status << " (" << s.error << ")\n";
                    continue;
                }
                for (const auto& c : s.checks)
                    std::cout << s.name << " " << c.check << ": "
                              << (c.pass ? "pass" : "FAIL")
                              << " (max residual " << c.max_residual << ")\n";
            }
            std::cout << (rep.all_pass ? "ALL PASS" : "FAILURES") << " (" << rep.checks_passed
                      << "/" << rep.checks_run << " checks)\n";
            return rep.all_pass ? 0 : 1;
        }
        if (scan->parsed()) {
            SuiteConfig defaults;
            defaults.fd_step = fd_step;
            defaults.ode_step = ode_step;
            std::ofstream out(out_path);
            if (!out) throw std::runtime_error("cannot write CSV: " + out_path);
            return scan_grid(family, params, out, defaults);
        }
        if (mesh->parsed()) {
            MeshFormat mf;
            if (format == "obj_charts")
                mf = MeshFormat::obj_charts;
            else if (format == "csv6d")
                mf = MeshFormat::csv6d;
            else
                throw std::runtime_error("format must be obj_charts or csv6d");
            SuiteConfig cfg = load_config(config_path);
            cfg.ode_step = app.count("--ode-step") ? ode_step : cfg.ode_step;
            BuildOptions opts;
            opts.ode_step = cfg.ode_step;
            for (const auto& entry : cfg.surfaces) {
                const Surface surf = build_surface(entry.spec, opts);
                export_mesh(surf, entry.grid, mf, out_path, entry.name);
                std::cout << "exported " << entry.name << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
