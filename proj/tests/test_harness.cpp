#include "s2h2/harness.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace s2h2;

namespace {
const std::string kConfigDir = std::string(S2H2_SOURCE_DIR) + "/configs/";

std::vector<std::string> read_lines(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}
} // namespace

TEST_CASE("bundled configs load") {
    const SuiteConfig v = load_config(kConfigDir + "vanishing_theta.json");
    CHECK(v.schema_version == 1);
    CHECK(v.surfaces.size() == 7);
    const SuiteConfig nv = load_config(kConfigDir + "nonvanishing.json");
    CHECK(nv.surfaces.size() == 3);
}

TEST_CASE("config schema is strict") {
    CHECK_THROWS(parse_config("{"));                       // not JSON
    CHECK_THROWS(parse_config(R"({"schema_version": 2, "surfaces": []})"));
    CHECK_THROWS(parse_config(R"({"schema_version": 1, "surfaces": [], "bogus": 1})"));
    CHECK_THROWS(parse_config(R"({"schema_version": 1, "surfaces": [
        {"name": "x", "family": "curve_product", "params": {"k_alpha": 1, "k_beta": 1, "oops": 2},
         "checks": []}]})"));
    CHECK_THROWS(parse_config(R"({"schema_version": 1, "tol_scale": -1, "surfaces": []})"));
    CHECK_THROWS(parse_config(R"({"schema_version": 1, "surfaces": [
        {"name": "x", "family": "curve_product", "params": {"k_alpha": 1, "k_beta": 1},
         "checks": ["nonsense"]}]})"));

    // empty check list: empty report, all pass
    const SuiteConfig cfg = parse_config(R"({"schema_version": 1, "surfaces": [
        {"name": "x", "family": "curve_product", "params": {"k_alpha": 1, "k_beta": 1},
         "checks": []}]})");
    const SuiteReport rep = run_suite(cfg);
    CHECK(rep.checks_run == 0);
    CHECK(rep.all_pass);
}

TEST_CASE("run_suite runs checks and reports deterministically") {
    const std::string text = R"({
      "schema_version": 1,
      "surfaces": [
        {"name": "cp", "family": "curve_product",
         "params": {"k_alpha": 1.0, "k_beta": 1.4142135623730951},
         "grid": {"nx": 5, "ny": 5},
         "checks": ["pmc", "hopf", "kahler", "intersection"]}
      ]
    })";
    const SuiteConfig cfg = parse_config(text);
    const SuiteReport rep = run_suite(cfg);
    CHECK(rep.checks_run == 4);
    CHECK(rep.checks_passed == 4);
    CHECK(rep.all_pass);
    CHECK(rep.surfaces[0].status == "ok");

    const std::string j1 = report_to_json(rep);
    const std::string j2 = report_to_json(run_suite(cfg));
    CHECK(j1 == j2); // bitwise-deterministic
    CHECK(j1.find("\"all_pass\": true") != std::string::npos);
}

TEST_CASE("constructor failures are per-surface, not fatal") {
    const std::string text = R"({
      "schema_version": 1,
      "surfaces": [
        {"name": "bad", "family": "curve_product", "params": {"k_alpha": 0.0, "k_beta": 0.0},
         "checks": ["pmc"]},
        {"name": "good", "family": "curve_product", "params": {"k_alpha": 0.0, "k_beta": 1.0},
         "grid": {"nx": 3, "ny": 3}, "checks": ["pmc"]}
      ]
    })";
    const SuiteReport rep = run_suite(parse_config(text));
    CHECK(rep.surfaces[0].status == "constructor_error");
    CHECK(rep.surfaces[1].status == "ok");
    CHECK(rep.surfaces[1].checks[0].pass);
    CHECK_FALSE(rep.all_pass);
}

TEST_CASE("negative control fails the pmc check through the harness") {
    const std::string text = R"({
      "schema_version": 1,
      "surfaces": [
        {"name": "control", "family": "perturbed_curve_product",
         "params": {"k_alpha": 1.0, "k_beta": 1.0, "amplitude": 0.01},
         "grid": {"nx": 6, "ny": 4}, "checks": ["pmc"]}
      ]
    })";
    const SuiteReport rep = run_suite(parse_config(text));
    CHECK_FALSE(rep.all_pass);
    CHECK(rep.surfaces[0].checks[0].max_residual > 1e-3);
}

TEST_CASE("scan over the vanishing curve-product line") {
    std::stringstream out;
    scan_grid("curve_product", "k_alpha=0:0.25:2;k_beta=vtheta", out);
    std::string line;
    std::getline(out, line);
    CHECK(line == "k_alpha,k_beta,Hnorm2,theta_re,theta_im,max_pmc_residual,c_sign_pattern,status");
    int rows = 0;
    while (std::getline(out, line)) {
        ++rows;
        std::stringstream ls(line);
        std::string tok;
        std::vector<std::string> cols;
        while (std::getline(ls, tok, ',')) cols.push_back(tok);
        REQUIRE(cols.size() == 8);
        const double ka = std::stod(cols[0]), kb = std::stod(cols[1]);
        CHECK(kb == doctest::Approx(std::sqrt(1 + ka * ka)).epsilon(1e-12));
        CHECK(std::abs(std::stod(cols[3])) < 1e-6); // theta_re
        CHECK(std::stod(cols[5]) < 1e-4);           // pmc
        CHECK(cols[6] == "zero");
        CHECK(cols[7] == "ok");
    }
    CHECK(rows == 9);
}

TEST_CASE("scan recovers the curve-product Hopf line at fixed k_alpha") {
    std::stringstream out;
    scan_grid("curve_product", "k_alpha=1;k_beta=0.5:0.5:2", out);
    std::string line;
    std::getline(out, line);
    while (std::getline(out, line)) {
        std::stringstream ls(line);
        std::string tok;
        std::vector<std::string> cols;
        while (std::getline(ls, tok, ',')) cols.push_back(tok);
        const double kb = std::stod(cols[1]);
        CHECK(std::stod(cols[3]) ==
              doctest::Approx(0.5 * (1 - kb * kb) + 0.5).epsilon(1e-8));
    }
}

TEST_CASE("scan handles special families and skips invalid points") {
    std::stringstream out;
    scan_grid("special_1", "a=vtheta;b=0.25:0.25:0.5;c=0:0.5:0.5;h0=0", out);
    std::string line;
    std::getline(out, line);
    int ok_rows = 0;
    while (std::getline(out, line)) {
        std::stringstream ls(line);
        std::string tok;
        std::vector<std::string> cols;
        while (std::getline(ls, tok, ',')) cols.push_back(tok);
        REQUIRE(cols.size() >= 10);
        if (cols[9].rfind("skipped", 0) == 0) continue;
        ++ok_rows;
        const double b = std::stod(cols[1]);
        CHECK(std::stod(cols[4]) == doctest::Approx(0.25 * b).epsilon(1e-4)); // Hnorm2 = b/4
        CHECK(std::abs(std::stod(cols[5])) < 1e-6);                          // theta ~ 0
    }
    CHECK(ok_rows == 4);

    std::stringstream bad;
    CHECK_THROWS(scan_grid("curve_product", "bogus=1", bad));
    CHECK_THROWS(scan_grid("lift_S2xR", "k_alpha=1", bad));

    // out-of-range parameters produce warning rows, not a crash
    std::stringstream warn;
    scan_grid("special_1", "a=-1;b=0.5;c=0;h0=0", warn);
    std::string all = warn.str();
    CHECK(all.find("skipped") != std::string::npos);
}

TEST_CASE("mesh export: obj charts and csv6d") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "s2h2_mesh_test";
    fs::remove_all(dir);

    const Surface cp = build_surface(make_curve_product(0, 1));
    GridSpec grid;
    grid.nx = 20;
    grid.ny = 20;
    export_mesh(cp, grid, MeshFormat::obj_charts, dir.string(), "cp");
    export_mesh(cp, grid, MeshFormat::csv6d, dir.string(), "cp");

    // 400 vertices per factor mesh
    int nv = 0, nf = 0, nattr = 0;
    for (const auto& line : read_lines(dir / "cp_sphere.obj")) {
        if (line.rfind("v ", 0) == 0) ++nv;
        if (line.rfind("f ", 0) == 0) ++nf;
        if (line.rfind("# attr ", 0) == 0) ++nattr;
    }
    CHECK(nv == 400);
    CHECK(nattr == 400);
    CHECK(nf == 2 * 19 * 19);

    // sphere factor of a curve product degenerates to a curve: vertices with
    // the same x collapse to the same projected point
    {
        const auto lines = read_lines(dir / "cp_sphere.obj");
        std::vector<std::string> verts;
        for (const auto& l : lines)
            if (l.rfind("v ", 0) == 0) verts.push_back(l);
        CHECK(verts[0] == verts[1]); // same i, consecutive j
    }

    // csv6d: row count = grid size, membership recheck on load
    {
        const auto lines = read_lines(dir / "cp.csv");
        CHECK(lines.size() == 401);
        for (size_t i = 1; i < lines.size(); i += 37) {
            std::stringstream ls(lines[i]);
            std::string tok;
            std::vector<double> cols;
            while (std::getline(ls, tok, ',')) cols.push_back(std::stod(tok));
            REQUIRE(cols.size() == 13);
            const Vec3 s(cols[2], cols[3], cols[4]);
            const Vec3 h(cols[5], cols[6], cols[7]);
            CHECK(std::abs(s.squaredNorm() - 1.0) < 1e-8);
            CHECK(std::abs(lorentz_inner(h, h) + 1.0) < 1e-8);
            CHECK(cols[12] < 1e-8); // stored membership residual column
        }
    }

    // Poincare disk image of the special_1 hyperboloid factor stays inside
    // the unit disk
    const Surface s1 = build_surface(make_special_1(1, 0.5, 0, 0, +1));
    export_mesh(s1, grid, MeshFormat::obj_charts, dir.string(), "s1");
    for (const auto& line : read_lines(dir / "s1_hyperbolic.obj")) {
        if (line.rfind("v ", 0) != 0) continue;
        std::stringstream ls(line.substr(2));
        double u, w, z;
        ls >> u >> w >> z;
        CHECK(u * u + w * w < 1.0);
    }
    fs::remove_all(dir);
}
