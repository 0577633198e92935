#pragma once

#include "s2h2/extrinsic.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

// Configuration and reporting layer: verification suites over parameter
// grids, CSV parameter scans, and mesh export for offline visualization.
// Config and report files are versioned JSON (schema_version 1); unknown
// fields are rejected so acceptance runs stay reproducible.

namespace s2h2 {

enum class CheckKind { pmc, hopf, kahler, frames, codazzi, intersection };

const char* check_name(CheckKind c);
CheckKind check_from_name(const std::string& name);

struct GridSpec {
    int nx = 10, ny = 10;
    double margin = 0.08;             // fraction of the chart kept clear at the border
    std::optional<ChartRect> rect;    // explicit sample rectangle (overrides margin)
};

struct SurfaceEntry {
    std::string name;
    SurfaceSpec spec;
    GridSpec grid;
    std::vector<CheckKind> checks;
    std::map<std::string, double> tolerances;   // per-check overrides
    std::optional<double> expected_theta;       // overrides the family formula
    std::optional<bool> expect_vanishing_theta; // overrides the family condition
};

struct SuiteConfig {
    int schema_version = 1;
    double fd_step = 1e-4;     // H-field / hopf stencils
    double pde_fd_step = 1e-3; // frame PDE and codazzi stencils
    double ode_step = 1e-3;
    double tol_scale = 1.0;
    std::vector<SurfaceEntry> surfaces;
};

struct CheckResult {
    std::string check;
    bool pass = false;
    double max_residual = 0;
    double worst_x = 0, worst_y = 0;
    std::map<std::string, double> details;
    std::string note;
};

struct SurfaceResult {
    std::string name;
    std::string family;
    std::string status; // "ok" or "constructor_error"
    std::string error;
    std::vector<CheckResult> checks;
};

struct SuiteReport {
    int schema_version = 1;
    double fd_step = 0, pde_fd_step = 0, ode_step = 0, tol_scale = 1;
    int seed = 0; // no ambient randomness; recorded for provenance
    std::vector<SurfaceResult> surfaces;
    int checks_run = 0, checks_passed = 0;
    bool all_pass = true;
};

SuiteConfig parse_config(const std::string& json_text);
SuiteConfig load_config(const std::string& path);
SuiteReport run_suite(const SuiteConfig& config);
std::string report_to_json(const SuiteReport& report);

// One CSV row per parameter point: parameters, |H|^2, Theta, max PMC
// residual, Kahler sign pattern. `params_spec` grammar (semicolon-separated):
//   name=value | name=start:step:end | name=vtheta
// where `vtheta` solves the Theta-vanishing condition for that parameter
// (k_beta = sqrt(1+k_alpha^2), a = 1+c^2).
int scan_grid(const std::string& family, const std::string& params_spec, std::ostream& out,
              const SuiteConfig& defaults = {});

enum class MeshFormat { obj_charts, csv6d };
void export_mesh(const Surface& surf, const GridSpec& grid, MeshFormat format,
                 const std::string& out_dir, const std::string& name);

} // namespace s2h2
