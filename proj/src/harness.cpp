#include "s2h2/harness.hpp"

#include "s2h2/frames.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace s2h2 {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

const char* check_name(CheckKind c) {
    switch (c) {
        case CheckKind::pmc: return "pmc";
        case CheckKind::hopf: return "hopf";
        case CheckKind::kahler: return "kahler";
        case CheckKind::frames: return "frames";
        case CheckKind::codazzi: return "codazzi";
        case CheckKind::intersection: return "intersection";
    }
    return "?";
}

CheckKind check_from_name(const std::string& name) {
    for (CheckKind c : {CheckKind::pmc, CheckKind::hopf, CheckKind::kahler, CheckKind::frames,
                        CheckKind::codazzi, CheckKind::intersection})
        if (name == check_name(c)) return c;
    throw std::invalid_argument("unknown check: " + name);
}

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ConfigError("unknown field '" + it.key() + "' in " + where);
    }
}

ChartRect parse_rect(const json& j, const std::string& where) {
    require_keys(j, {"x0", "x1", "y0", "y1"}, where);
    return {j.at("x0").get<double>(), j.at("x1").get<double>(), j.at("y0").get<double>(),
            j.at("y1").get<double>()};
}

int parse_slope_sign(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "+") return +1;
        if (s == "-") return -1;
        throw ConfigError("slope_sign must be \"+\" or \"-\"");
    }
    return j.get<double>() >= 0 ? +1 : -1;
}

SurfaceSpec parse_surface_spec(const json& j, const std::string& where) {
    SurfaceSpec spec;
    spec.family = family_from_name(j.at("family").get<std::string>());
    const json& p = j.at("params");
    switch (spec.family) {
        case Family::curve_product: {
            require_keys(p, {"k_alpha", "k_beta", "allow_minimal"}, where + ".params");
            CurveProductParams cp;
            cp.k_alpha = p.at("k_alpha").get<double>();
            cp.k_beta = p.at("k_beta").get<double>();
            cp.allow_minimal = p.value("allow_minimal", false);
            spec.params = cp;
            break;
        }
        case Family::special_1:
        case Family::special_2: {
            require_keys(p, {"a", "b", "c", "h0", "slope_sign"}, where + ".params");
            SpecialParams sp;
            sp.a = p.at("a").get<double>();
            sp.b = p.at("b").get<double>();
            sp.c = p.at("c").get<double>();
            sp.h0 = p.at("h0").get<double>();
            sp.slope_sign = p.contains("slope_sign") ? parse_slope_sign(p.at("slope_sign")) : +1;
            spec.params = sp;
            break;
        }
        case Family::lift_S2xR:
        case Family::lift_H2xR: {
            require_keys(p, {"generator", "geodesic_angle", "allow_minimal"}, where + ".params");
            const json& g = p.at("generator");
            require_keys(g, {"type", "k", "H"}, where + ".params.generator");
            LiftParams lp;
            const std::string type = g.at("type").get<std::string>();
            if (type == "cylinder") {
                lp.generator = CylinderDesc{g.at("k").get<double>()};
            } else if (type == "rotational_sphere") {
                lp.generator = RotationalDesc{g.at("H").get<double>()};
            } else {
                throw ConfigError("generator type must be cylinder or rotational_sphere");
            }
            lp.geodesic_angle = p.value("geodesic_angle", 0.0);
            lp.allow_minimal = p.value("allow_minimal", false);
            spec.params = lp;
            break;
        }
        case Family::perturbed_curve_product: {
            require_keys(p, {"k_alpha", "k_beta", "amplitude"}, where + ".params");
            PerturbedParams pp;
            pp.k_alpha = p.at("k_alpha").get<double>();
            pp.k_beta = p.at("k_beta").get<double>();
            pp.amplitude = p.value("amplitude", 0.01);
            spec.params = pp;
            break;
        }
    }
    if (j.contains("chart")) spec.chart = parse_rect(j.at("chart"), where + ".chart");
    return spec;
}

struct GridIter {
    ChartRect rect;
    int nx, ny;
    template <class Fn> void for_each(Fn&& fn) const {
        for (int i = 0; i < nx; ++i) {
            const double x = nx == 1 ? 0.5 * (rect.x0 + rect.x1)
                                     : rect.x0 + (rect.x1 - rect.x0) * i / (nx - 1);
            for (int j = 0; j < ny; ++j) {
                const double y = ny == 1 ? 0.5 * (rect.y0 + rect.y1)
                                         : rect.y0 + (rect.y1 - rect.y0) * j / (ny - 1);
                fn(x, y);
            }
        }
    }
};

GridIter make_grid(const Surface& surf, const GridSpec& g) {
    const ChartRect rect = g.rect ? *g.rect : surf.interior(g.margin);
    return {rect, std::max(1, g.nx), std::max(1, g.ny)};
}

double tol_for(const SurfaceEntry& e, const SuiteConfig& cfg, const std::string& key,
               double fallback) {
    auto it = e.tolerances.find(key);
    return (it != e.tolerances.end() ? it->second : fallback) * cfg.tol_scale;
}

struct Worst {
    double value = 0;
    double x = 0, y = 0;
    void update(double v, double ax, double ay) {
        if (v > value) {
            value = v;
            x = ax;
            y = ay;
        }
    }
};

CheckResult run_check(CheckKind kind, const Surface& surf, const SurfaceEntry& entry,
                      const SuiteConfig& cfg) {
    CheckResult res;
    res.check = check_name(kind);
    const GridIter grid = make_grid(surf, entry.grid);
    const bool vanishing = entry.expect_vanishing_theta.value_or(surf.expect_vanishing_theta());

    switch (kind) {
        case CheckKind::pmc: {
            const double tol = tol_for(entry, cfg, "pmc", 1e-4);
            Worst w;
            grid.for_each(
                [&](double x, double y) { w.update(pmc_residual(surf, x, y, cfg.fd_step), x, y); });
            res.max_residual = w.value;
            res.worst_x = w.x;
            res.worst_y = w.y;
            res.pass = w.value < tol;
            res.details["tolerance"] = tol;
            break;
        }
        case CheckKind::hopf: {
            const double fallback = surf.family() == Family::curve_product ? 1e-6
                                    : vanishing                            ? 1e-4
                                                                           : 1e-3;
            const double tol = tol_for(entry, cfg, "hopf", fallback);
            std::optional<double> expected = entry.expected_theta;
            if (!expected) expected = surf.expected_theta();
            Worst w;
            double max_abs = 0;
            grid.for_each([&](double x, double y) {
                const Complex th = hopf_coefficient(surf.jet(x, y, 2));
                max_abs = std::max(max_abs, std::abs(th));
                const double dev = expected ? std::abs(th - Complex(*expected, 0)) : std::abs(th);
                w.update(dev, x, y);
            });
            res.max_residual = w.value;
            res.worst_x = w.x;
            res.worst_y = w.y;
            res.pass = w.value < tol;
            res.details["tolerance"] = tol;
            res.details["max_abs_theta"] = max_abs;
            if (expected) res.details["expected_theta"] = *expected;
            break;
        }
        case CheckKind::kahler: {
            const double bound_tol = tol_for(entry, cfg, "kahler_bound", 1e-9);
            const double csq_tol = tol_for(entry, cfg, "kahler_csq", 1e-6);
            Worst w;
            double max_csq = 0;
            int n_pos = 0, n_neg = 0, n_zero = 0;
            grid.for_each([&](double x, double y) {
                const auto [C1, C2] = kahler_functions(surf.jet(x, y, 1));
                w.update(std::max(std::abs(C1), std::abs(C2)) - 1.0, x, y);
                max_csq = std::max(max_csq, std::abs(C1 * C1 - C2 * C2));
                if (std::max(std::abs(C1), std::abs(C2)) < 1e-7)
                    ++n_zero;
                else if (C1 * C2 > 0)
                    ++n_pos;
                else
                    ++n_neg;
            });
            res.max_residual = std::max(w.value, 0.0);
            res.worst_x = w.x;
            res.worst_y = w.y;
            res.details["max_csq_gap"] = max_csq;
            res.details["sign_pattern_constant"] = (n_pos == 0 || n_neg == 0) ? 1.0 : 0.0;
            res.pass = w.value <= bound_tol;
            if (vanishing) {
                res.pass = res.pass && max_csq < csq_tol && (n_pos == 0 || n_neg == 0);
                res.details["csq_tolerance"] = csq_tol;
            }
            res.note = n_zero > 0 && n_pos == 0 && n_neg == 0 ? "C1 = C2 = 0 (Lagrangian)"
                       : n_neg == 0                           ? "C1 = C2 pattern"
                       : n_pos == 0                           ? "C1 = -C2 pattern"
                                                              : "mixed sign pattern";
            break;
        }
        case CheckKind::intersection: {
            const double tol = tol_for(entry, cfg, "intersection", 1e-5);
            Worst w;
            grid.for_each([&](double x, double y) {
                const auto [sp, sh] = projection_rank_defect(surf.jet(x, y, 1));
                w.update(std::min(sp, sh), x, y);
            });
            res.max_residual = w.value;
            res.worst_x = w.x;
            res.worst_y = w.y;
            res.details["tolerance"] = tol;
            if (vanishing) {
                res.pass = w.value < tol;
            } else {
                res.pass = true;
                res.note = "no vanishing Hopf differential expected; values recorded";
            }
            break;
        }
        case CheckKind::frames: {
            const double inv_tol = tol_for(entry, cfg, "frames_invariants", 1e-6);
            const double alt_tol = tol_for(entry, cfg, "frames_hopf_alt", 1e-5);
            const double pde_tol = tol_for(entry, cfg, "frames_pde", 1e-3);
            const double fmat_tol = tol_for(entry, cfg, "frames_fmatrix", 1e-6);
            const double ah_tol = tol_for(entry, cfg, "frames_matrixAH", 1e-6);
            const double hxx_tol = tol_for(entry, cfg, "frames_hXiXi", 1e-5);
            const double nucomp_tol = tol_for(entry, cfg, "frames_nucomp", 1e-4);
            double inv_max = 0, alt_max = 0, pde_max = 0, fmat_max = 0, ah_max = 0, hxx_max = 0,
                   sin_max = 0;
            bool disjunct_ok = true;
            Worst w;
            grid.for_each([&](double x, double y) {
                const ImmersionJet jet = surf.jet(x, y, 2);
                const FrenetData fd = frenet_data(jet);
                inv_max = std::max({inv_max, fd.gammanorm_residual, fd.gamma_product_residual,
                                    fd.xi_norm_residual});
                alt_max =
                    std::max(alt_max, std::abs(fd.hopf_alternative() - hopf_coefficient(jet)));
                const FrenetPdeResiduals fp = frenet_pde_residuals(surf, x, y, cfg.pde_fd_step);
                pde_max = std::max(pde_max, fp.max_residual);
                const AdaptedPdeResiduals ap =
                    adapted_pde_residuals(surf, x, y, cfg.pde_fd_step, nucomp_tol);
                const AdaptedFrame af = adapted_frame(jet);
                fmat_max = std::max(fmat_max, af.fmatrix_residual);
                pde_max = std::max(pde_max, ap.max_fd_residual);
                if (vanishing) {
                    ah_max = std::max(ah_max, af.matrixAH_residual);
                    hxx_max = std::max(hxx_max, ap.max_identity_residual);
                    sin_max = std::max(sin_max, std::min(ap.sin_alpha, ap.sin_beta));
                    if (ap.nucomp_disjunct != 1 && ap.nucomp_disjunct != 2) disjunct_ok = false;
                }
                w.update(std::max({fd.gammanorm_residual, fp.max_residual, af.fmatrix_residual}),
                         x, y);
            });
            res.max_residual = w.value;
            res.worst_x = w.x;
            res.worst_y = w.y;
            res.details["invariants_max"] = inv_max;
            res.details["hopf_alt_max"] = alt_max;
            res.details["pde_max"] = pde_max;
            res.details["fmatrix_max"] = fmat_max;
            res.pass = inv_max < inv_tol && alt_max < alt_tol && pde_max < pde_tol &&
                       fmat_max < fmat_tol;
            if (vanishing) {
                res.details["matrixAH_max"] = ah_max;
                res.details["hXiXi_max"] = hxx_max;
                res.details["min_sin_max"] = sin_max;
                res.details["nucomp_disjunct_ok"] = disjunct_ok ? 1.0 : 0.0;
                res.pass = res.pass && ah_max < ah_tol && hxx_max < hxx_tol && disjunct_ok &&
                           sin_max < nucomp_tol;
            }
            break;
        }
        case CheckKind::codazzi: {
            const double tol = tol_for(entry, cfg, "codazzi", 1e-3);
            Worst w;
            // codazzi stencils are the widest; a coarse subgrid suffices
            GridIter sub = grid;
            sub.nx = std::min(sub.nx, 3);
            sub.ny = std::min(sub.ny, 3);
            sub.for_each([&](double x, double y) {
                w.update(codazzi_residual(surf, x, y, 0, 1, 0, cfg.pde_fd_step), x, y);
                w.update(codazzi_residual(surf, x, y, 1, 0, 1, cfg.pde_fd_step), x, y);
            });
            res.max_residual = w.value;
            res.worst_x = w.x;
            res.worst_y = w.y;
            res.pass = w.value < tol;
            res.details["tolerance"] = tol;
            break;
        }
    }
    return res;
}

} // namespace

SuiteConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        require_keys(
            j, {"schema_version", "fd_step", "pde_fd_step", "ode_step", "tol_scale", "surfaces"},
            "config");
        SuiteConfig cfg;
        cfg.schema_version = j.at("schema_version").get<int>();
        if (cfg.schema_version != 1) throw std::runtime_error("unsupported schema_version");
        cfg.fd_step = j.value("fd_step", 1e-4);
        cfg.pde_fd_step = j.value("pde_fd_step", 1e-3);
        cfg.ode_step = j.value("ode_step", 1e-3);
        cfg.tol_scale = j.value("tol_scale", 1.0);
        if (cfg.fd_step <= 0 || cfg.pde_fd_step <= 0 || cfg.ode_step <= 0 || cfg.tol_scale <= 0)
            throw std::runtime_error("steps and tol_scale must be positive");
        for (const json& s : j.at("surfaces")) {
            require_keys(s,
                         {"name", "family", "params", "chart", "grid", "checks", "tolerances",
                          "expected_theta", "expect_vanishing_theta"},
                         "surface entry");
            SurfaceEntry e;
            e.name = s.at("name").get<std::string>();
            e.spec = parse_surface_spec(s, "surface '" + e.name + "'");
            if (s.contains("grid")) {
                const json& g = s.at("grid");
                require_keys(g, {"nx", "ny", "margin", "rect"}, "grid of '" + e.name + "'");
                e.grid.nx = g.value("nx", 10);
                e.grid.ny = g.value("ny", 10);
                e.grid.margin = g.value("margin", 0.08);
                if (g.contains("rect")) e.grid.rect = parse_rect(g.at("rect"), "grid.rect");
            }
            for (const json& c : s.at("checks")) e.checks.push_back(check_from_name(c));
            if (s.contains("tolerances")) {
                for (auto it = s.at("tolerances").begin(); it != s.at("tolerances").end(); ++it) {
                    const double v = it.value().get<double>();
                    if (v <= 0) throw std::runtime_error("tolerances must be positive");
                    e.tolerances[it.key()] = v;
                }
            }
            if (s.contains("expected_theta"))
                e.expected_theta = s.at("expected_theta").get<double>();
            if (s.contains("expect_vanishing_theta"))
                e.expect_vanishing_theta = s.at("expect_vanishing_theta").get<bool>();
            cfg.surfaces.push_back(std::move(e));
        }
        return cfg;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed config: ") + e.what());
    }
}

SuiteConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

SurfaceResult process_entry(const SurfaceEntry& entry, const SuiteConfig& cfg,
                            const BuildOptions& opts) {
    SurfaceResult sr;
    sr.name = entry.name;
    sr.family = family_name(entry.spec.family);
    try {
        const Surface surf = build_surface(entry.spec, opts);
        sr.status = "ok";
        for (CheckKind kind : entry.checks) sr.checks.push_back(run_check(kind, surf, entry, cfg));
    } catch (const std::exception& e) {
        // constructor failures are reported per-surface, not fatal to the suite
        sr.status = "constructor_error";
        sr.error = e.what();
    }
    return sr;
}

int thread_count() {
    const char* env = std::getenv("S2H2_THREADS");
    if (!env) return 1;
    return std::max(1, std::atoi(env));
}

} // namespace

SuiteReport run_suite(const SuiteConfig& cfg) {
    SuiteReport rep;
    rep.fd_step = cfg.fd_step;
    rep.pde_fd_step = cfg.pde_fd_step;
    rep.ode_step = cfg.ode_step;
    rep.tol_scale = cfg.tol_scale;

    BuildOptions opts;
    opts.ode_step = cfg.ode_step;

    // surfaces evaluate independently; results are reduced in config order
    rep.surfaces.resize(cfg.surfaces.size());
    const int nthreads = std::min<int>(thread_count(), std::max<size_t>(cfg.surfaces.size(), 1));
    if (nthreads <= 1) {
        for (size_t i = 0; i < cfg.surfaces.size(); ++i)
            rep.surfaces[i] = process_entry(cfg.surfaces[i], cfg, opts);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> workers;
        for (int t = 0; t < nthreads; ++t)
            workers.emplace_back([&] {
                for (size_t i = next++; i < cfg.surfaces.size(); i = next++)
                    rep.surfaces[i] = process_entry(cfg.surfaces[i], cfg, opts);
            });
        for (auto& w : workers) w.join();
    }

    for (const auto& sr : rep.surfaces) {
        if (sr.status != "ok") rep.all_pass = false;
        for (const auto& cr : sr.checks) {
            ++rep.checks_run;
            if (cr.pass)
                ++rep.checks_passed;
            else
                rep.all_pass = false;
        }
    }
    return rep;
}

std::string report_to_json(const SuiteReport& rep) {
    ordered_json j;
    j["schema_version"] = rep.schema_version;
    j["provenance"] = {{"fd_step", rep.fd_step},
                       {"pde_fd_step", rep.pde_fd_step},
                       {"ode_step", rep.ode_step},
                       {"tol_scale", rep.tol_scale},
                       {"seed", rep.seed}};
    ordered_json surfaces = ordered_json::array();
    for (const auto& s : rep.surfaces) {
        ordered_json js;
        js["name"] = s.name;
        js["family"] = s.family;
        js["status"] = s.status;
        if (!s.error.empty()) js["error"] = s.error;
        ordered_json checks = ordered_json::array();
        for (const auto& c : s.checks) {
            ordered_json jc;
            jc["check"] = c.check;
            jc["pass"] = c.pass;
            jc["max_residual"] = c.max_residual;
            jc["worst"] = {{"x", c.worst_x}, {"y", c.worst_y}};
            if (!c.details.empty()) {
                ordered_json d;
                for (const auto& [k, v] : c.details) d[k] = v;
                jc["details"] = d;
            }
            if (!c.note.empty()) jc["note"] = c.note;
            checks.push_back(jc);
        }
        js["checks"] = checks;
        surfaces.push_back(js);
    }
    j["surfaces"] = surfaces;
    j["summary"] = {{"checks_run", rep.checks_run},
                    {"checks_passed", rep.checks_passed},
                    {"all_pass", rep.all_pass}};
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// parameter scans

namespace {

struct ParamToken {
    enum Kind { value, range, vtheta } kind = value;
    double v = 0;
    double start = 0, step = 0, stop = 0;
};

std::map<std::string, ParamToken> parse_param_spec(const std::string& spec) {
    std::map<std::string, ParamToken> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bad param token (want name=value): " + item);
        const std::string name = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        ParamToken tok;
        if (val == "vtheta") {
            tok.kind = ParamToken::vtheta;
        } else if (val.find(':') != std::string::npos) {
            tok.kind = ParamToken::range;
            std::stringstream vs(val);
            std::string a, b, c;
            std::getline(vs, a, ':');
            std::getline(vs, b, ':');
            std::getline(vs, c, ':');
            tok.start = std::stod(a);
            tok.step = std::stod(b);
            tok.stop = std::stod(c);
            if (tok.step <= 0) throw std::runtime_error("range step must be positive: " + item);
        } else {
            tok.v = std::stod(val);
        }
        out[name] = tok;
    }
    return out;
}

std::string classify_signs(double max_abs, int n_pos, int n_neg) {
    if (max_abs < 1e-7) return "zero";
    if (n_neg == 0) return "C1=C2";
    if (n_pos == 0) return "C1=-C2";
    return "mixed";
}

} // namespace

int scan_grid(const std::string& family, const std::string& params_spec, std::ostream& out,
              const SuiteConfig& defaults) {
    const Family fam = family_from_name(family);
    auto tokens = parse_param_spec(params_spec);

    std::vector<std::string> names;
    if (fam == Family::curve_product)
        names = {"k_alpha", "k_beta"};
    else if (fam == Family::special_1 || fam == Family::special_2)
        names = {"a", "b", "c", "h0"};
    else
        throw std::runtime_error("scan supports curve_product, special_1 and special_2");
    for (const auto& [k, v] : tokens)
        if (std::find(names.begin(), names.end(), k) == names.end())
            throw std::runtime_error("unknown parameter '" + k + "' for family " + family);

    std::map<std::string, ParamToken> full;
    for (const auto& n : names) {
        if (tokens.count(n)) {
            full[n] = tokens[n];
        } else {
            ParamToken t;
            if (n == "b")
                t.v = 0.5;
            else if (n == "h0")
                t.v = fam == Family::special_2 ? 2.5 : 0.0;
            else
                t.v = 0.0;
            full[n] = t;
        }
    }

    for (const auto& n : names) out << n << ",";
    out << "Hnorm2,theta_re,theta_im,max_pmc_residual,c_sign_pattern,status\n";

    std::vector<std::map<std::string, double>> points{{}};
    for (const auto& n : names) {
        const ParamToken& t = full[n];
        if (t.kind == ParamToken::range) {
            std::vector<std::map<std::string, double>> next;
            for (const auto& base : points)
                for (double v = t.start; v <= t.stop + 1e-12; v += t.step) {
                    auto m = base;
                    m[n] = v;
                    next.push_back(m);
                }
            points = std::move(next);
        } else if (t.kind == ParamToken::value) {
            for (auto& m : points) m[n] = t.v;
        }
    }
    for (auto& m : points) {
        if (fam == Family::curve_product && full["k_beta"].kind == ParamToken::vtheta)
            m["k_beta"] = std::sqrt(1.0 + m["k_alpha"] * m["k_alpha"]);
        if (fam != Family::curve_product && full["a"].kind == ParamToken::vtheta)
            m["a"] = 1.0 + m["c"] * m["c"];
        for (const auto& n : names)
            if (!m.count(n)) throw std::runtime_error("parameter " + n + " unresolved");
    }

    BuildOptions opts;
    opts.ode_step = defaults.ode_step;
    out.precision(17);
    for (const auto& m : points) {
        for (const auto& n : names) out << m.at(n) << ",";
        try {
            SurfaceSpec spec;
            if (fam == Family::curve_product)
                spec = make_curve_product(m.at("k_alpha"), m.at("k_beta"));
            else if (fam == Family::special_1)
                spec = make_special_1(m.at("a"), m.at("b"), m.at("c"), m.at("h0"));
            else
                spec = make_special_2(m.at("a"), m.at("b"), m.at("c"), m.at("h0"));
            const Surface surf = build_surface(spec, opts);
            const GridIter grid = make_grid(surf, GridSpec{5, 5, 0.15, {}});
            double max_pmc = 0, max_abs_C = 0;
            int n_pos = 0, n_neg = 0;
            Complex theta{0, 0};
            bool first = true;
            grid.for_each([&](double x, double y) {
                max_pmc = std::max(max_pmc, pmc_residual(surf, x, y, defaults.fd_step));
                const auto [C1, C2] = kahler_functions(surf.jet(x, y, 1));
                max_abs_C = std::max({max_abs_C, std::abs(C1), std::abs(C2)});
                if (std::max(std::abs(C1), std::abs(C2)) >= 1e-7) (C1 * C2 > 0 ? n_pos : n_neg)++;
                if (first) {
                    theta = hopf_coefficient(surf.jet(x, y, 2));
                    first = false;
                }
            });
            const double cx = 0.5 * (surf.domain().x0 + surf.domain().x1);
            const double cy = 0.5 * (surf.domain().y0 + surf.domain().y1);
            out << mean_curvature(surf.jet(cx, cy, 2)).second << "," << theta.real() << ","
                << theta.imag() << "," << max_pmc << ","
                << classify_signs(max_abs_C, n_pos, n_neg) << ",ok\n";
        } catch (const std::exception& e) {
            out << "nan,nan,nan,nan,none,skipped: " << e.what() << "\n";
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// mesh export

void export_mesh(const Surface& surf, const GridSpec& grid, MeshFormat format,
                 const std::string& out_dir, const std::string& name) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const GridIter g = make_grid(surf, grid);

    struct Vertex {
        Vec6 p;
        double Hnorm2, abs_theta, C1, C2, mem;
        double x, y;
    };
    std::vector<Vertex> verts;
    verts.reserve(static_cast<size_t>(g.nx) * g.ny);
    g.for_each([&](double x, double y) {
        const ImmersionJet jet = surf.jet(x, y, 2);
        Vertex v;
        v.p = jet.p;
        v.x = x;
        v.y = y;
        const auto [H, H2] = mean_curvature(jet);
        v.Hnorm2 = H2;
        v.abs_theta = chart_is_conformal(jet) ? std::abs(hopf_coefficient(jet, H))
                                              : std::numeric_limits<double>::quiet_NaN();
        std::tie(v.C1, v.C2) = kahler_functions(jet);
        v.mem = std::max(jet.point().sphere_residual(), jet.point().hyper_residual());
        verts.push_back(v);
    });

    if (format == MeshFormat::csv6d) {
        std::ofstream out(fs::path(out_dir) / (name + ".csv"));
        out.precision(17);
        out << "x,y,c1,c2,c3,c4,c5,c6,Hnorm2,absTheta,C1,C2,mem_residual\n";
        for (const auto& v : verts) {
            out << v.x << "," << v.y;
            for (int i = 0; i < 6; ++i) out << "," << v.p[i];
            out << "," << v.Hnorm2 << "," << v.abs_theta << "," << v.C1 << "," << v.C2 << ","
                << v.mem << "\n";
        }
        return;
    }

    // obj_charts: sphere factor via stereographic projection from the south
    // pole, hyperboloid factor via the Poincare disk map
    auto write_obj = [&](const std::string& path, auto&& project) {
        std::ofstream out(path);
        out.precision(17);
        out << "# " << name << " (" << g.nx << "x" << g.ny << " chart grid)\n";
        for (size_t i = 0; i < verts.size(); ++i) {
            out << "# attr " << (i + 1) << " Hnorm2 " << verts[i].Hnorm2 << " absTheta "
                << verts[i].abs_theta << " C1 " << verts[i].C1 << " C2 " << verts[i].C2 << "\n";
        }
        for (const auto& v : verts) {
            const auto [u, w] = project(v.p);
            out << "v " << u << " " << w << " 0\n";
        }
        for (int i = 0; i + 1 < g.nx; ++i) {
            for (int j = 0; j + 1 < g.ny; ++j) {
                const int a = i * g.ny + j + 1; // OBJ indices are 1-based
                const int b = (i + 1) * g.ny + j + 1;
                const int c = (i + 1) * g.ny + j + 2;
                const int d = i * g.ny + j + 2;
                out << "f " << a << " " << b << " " << c << "\n";
                out << "f " << a << " " << c << " " << d << "\n";
            }
        }
    };
    write_obj((fs::path(out_dir) / (name + "_sphere.obj")).string(), [](const Vec6& p) {
        return std::pair{p[0] / (1.0 + p[2]), p[1] / (1.0 + p[2])};
    });
    write_obj((fs::path(out_dir) / (name + "_hyperbolic.obj")).string(), [](const Vec6& p) {
        return std::pair{p[3] / (1.0 + p[5]), p[4] / (1.0 + p[5])};
    });
}

} // namespace s2h2
