#include "s2h2/extrinsic.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace s2h2;

TEST_CASE("second fundamental form of simple products") {
    // two geodesics: totally geodesic surface
    const Surface geo = build_surface(make_curve_product(0, 0, true));
    const SecondFundamental h0 = second_fundamental(geo.jet(0.3, 0.5, 2));
    CHECK(h0.hxx.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(h0.hxy.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(h0.hyy.cwiseAbs().maxCoeff() < 1e-12);

    // great circle x horocycle: only h_yy survives and it is the horocycle
    // normal, measured against the factor Gauss formula oracle
    const Surface s = build_surface(make_curve_product(0, 1));
    const double y0 = 0.4;
    const ImmersionJet jet = s.jet(0.2, y0, 2);
    const SecondFundamental h = second_fundamental(jet);
    CHECK(h.hxx.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(h.hxy.cwiseAbs().maxCoeff() < 1e-12);
    const CurveSample beta = hyperbolic_constant_curvature(1, y0);
    const Vec3 oracle = beta.d2 - lorentz_inner(beta.d1, beta.d1) * beta.pos;
    CHECK((hyper_part(h.hyy) - oracle).norm() < 1e-12);
    CHECK(minkowski_inner(h.hyy, h.hyy) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("second fundamental form is normal to everything it should be") {
    const Surface s = build_surface(make_special_1(1, 0.5, 0, 0, +1));
    const ChartRect r = s.interior(0.1);
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double x = r.x0 + (r.x1 - r.x0) * i / 9.0;
            const double y = r.y0 + (r.y1 - r.y0) * j / 9.0;
            const ImmersionJet jet = s.jet(x, y, 2);
            const SecondFundamental h = second_fundamental(jet);
            const Vec6 ph = phi_hat(jet.point());
            for (const Vec6* v : {&h.hxx, &h.hxy, &h.hyy}) {
                CHECK(std::abs(minkowski_inner(*v, jet.px)) < 1e-9);
                CHECK(std::abs(minkowski_inner(*v, jet.py)) < 1e-9);
                CHECK(std::abs(minkowski_inner(*v, jet.p)) < 1e-9);
                CHECK(std::abs(minkowski_inner(*v, ph)) < 1e-9);
            }
        }
    }
}

TEST_CASE("mean curvature magnitudes match the closed forms") {
    const Surface cp = build_surface(make_curve_product(0, 1));
    CHECK(mean_curvature(cp.jet(0.1, -0.4, 2)).second == doctest::Approx(0.25).epsilon(1e-10));

    const Surface s1 = build_surface(make_special_1(1, 0.5, 0, 0, +1));
    const ChartRect r = s1.interior(0.1);
    for (int i = 0; i < 8; ++i) {
        const double x = r.x0 + (r.x1 - r.x0) * i / 7.0;
        CHECK(std::abs(mean_curvature(s1.jet(x, 0.3, 2)).second - 0.125) < 1e-4);
    }

    const Surface geo = build_surface(make_curve_product(0, 0, true));
    CHECK(mean_curvature(geo.jet(0, 0, 2)).first.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pmc residual: positive families pass, perturbed control fails") {
    const Surface cp = build_surface(make_curve_product(1, std::sqrt(2.0)));
    double worst = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            worst = std::max(worst, pmc_residual(cp, -1.5 + 3.0 * i / 9.0, -1.5 + 3.0 * j / 9.0,
                                                 1e-4));
    CHECK(worst < 1e-5);

    const Surface s2 = build_surface(make_special_2(1, 0.5, 0, 2, +1));
    const ChartRect r = s2.interior(0.1);
    worst = 0;
    for (int i = 0; i < 10; ++i)
        worst = std::max(worst,
                         pmc_residual(s2, r.x0 + (r.x1 - r.x0) * i / 9.0, 0.25, 1e-4));
    CHECK(worst < 1e-4);

    const Surface bad = build_surface(make_perturbed_curve_product(1, 1, 0.01));
    double bad_worst = 0;
    for (int i = 1; i <= 9; ++i)
        bad_worst = std::max(bad_worst, pmc_residual(bad, 0.3 * i, 0.5, 1e-4));
    CHECK(bad_worst > 1e-3);

    CHECK_THROWS_AS(pmc_residual(cp, cp.domain().x1, 0, 1e-4), std::domain_error);
}

TEST_CASE("hopf coefficient on the curve-product grid") {
    for (double ka : {0.0, 0.5, 1.0, 2.0}) {
        for (double kb : {0.5, 1.0, std::sqrt(2.0), 2.0}) {
            const Surface s = build_surface(make_curve_product(ka, kb));
            const Complex th = hopf_coefficient(s.jet(0.7, -0.9, 2));
            const double expected = 0.5 * (ka * ka - kb * kb) + 0.5;
            CHECK(std::abs(th - Complex(expected, 0)) < 1e-6);
        }
    }
}

TEST_CASE("hopf coefficient on special surfaces") {
    const Surface s10 = build_surface(make_special_1(1, 0.5, 0, 0, +1));
    const Surface s1v = build_surface(make_special_1(2, 0.5, 0, 0, +1));
    CHECK(std::abs(hopf_coefficient(s10.jet(0.8, 0.2, 2))) < 1e-8);
    CHECK(std::abs(hopf_coefficient(s1v.jet(0.8, 0.2, 2)) - Complex(0.25, 0)) < 1e-8);

    // nonvanishing special_2 magnitude
    const Surface s2v = build_surface(make_special_2(2, 0.5, 0, 2.5, +1));
    CHECK(std::abs(hopf_coefficient(s2v.jet(0.2, 0.2, 2))) > 0.1);
}

TEST_CASE("hopf coefficient is holomorphic") {
    const Surface s = build_surface(make_special_1(2, 0.5, 0, 0, +1));
    const ChartRect r = s.interior(0.2);
    const double d = 1e-3;
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const double x = r.x0 + (r.x1 - r.x0) * i / 4.0;
            const double y = r.y0 + (r.y1 - r.y0) * j / 4.0;
            auto th = [&](double ax, double ay) { return hopf_coefficient(s.jet(ax, ay, 2)); };
            const Complex dzbar = 0.5 * ((th(x + d, y) - th(x - d, y)) / (2 * d) +
                                         Complex(0, 1) * (th(x, y + d) - th(x, y - d)) / (2 * d));
            worst = std::max(worst, std::abs(dzbar));
        }
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("hopf coefficient is chart-covariant under real rescaling") {
    const Surface s = build_surface(make_curve_product(1, 1));
    const ImmersionJet jet = s.jet(0.3, 0.8, 2);
    const Complex base = hopf_coefficient(jet);
    for (double lam : {0.5, 2.0}) {
        // chart u = x/lam: derivatives scale by powers of lam
        ImmersionJet scaled = jet;
        scaled.px *= lam;
        scaled.py *= lam;
        scaled.pxx *= lam * lam;
        scaled.pxy *= lam * lam;
        scaled.pyy *= lam * lam;
        const Complex got = hopf_coefficient(scaled);
        CHECK(std::abs(got - lam * lam * base) < 1e-10);
    }
}

TEST_CASE("hopf coefficient refuses non-conformal charts") {
    const Surface s = build_surface(make_curve_product(1, 1));
    ImmersionJet jet = s.jet(0.1, 0.1, 2);
    jet.px *= 2.0; // break E = G
    jet.pxx *= 4.0;
    jet.pxy *= 2.0;
    CHECK_THROWS_AS(hopf_coefficient(jet), std::invalid_argument);
}

TEST_CASE("kahler functions") {
    // any curve product is Lagrangian for both structures
    const Surface cp = build_surface(make_curve_product(2, 0.5));
    const auto [c1, c2] = kahler_functions(cp.jet(0.4, 1.1, 1));
    CHECK(std::abs(c1) < 1e-12);
    CHECK(std::abs(c2) < 1e-12);

    // special_1 has C1 = C2, special_2 has C1 = -C2; both bounded by 1
    const Surface s1 = build_surface(make_special_1(1, 0.5, 0, 0, +1));
    const Surface s2 = build_surface(make_special_2(1, 0.5, 0, 2, +1));
    const ChartRect r1 = s1.interior(0.1), r2 = s2.interior(0.1);
    for (int i = 0; i < 20; ++i) {
        const double t = i / 19.0;
        const auto [a1, a2] = kahler_functions(s1.jet(r1.x0 + (r1.x1 - r1.x0) * t, 0.37, 1));
        CHECK(std::abs(a1 - a2) < 1e-9);
        CHECK(std::abs(a1 * a1 - a2 * a2) < 1e-6);
        CHECK(std::abs(a1) <= 1.0 + 1e-9);
        const auto [b1, b2] = kahler_functions(s2.jet(r2.x0 + (r2.x1 - r2.x0) * t, 0.37, 1));
        CHECK(std::abs(b1 + b2) < 1e-9);
        CHECK(std::abs(b1) <= 1.0 + 1e-9);
    }
}

TEST_CASE("factor Jacobians recover the Kahler functions") {
    // Jac(phi) = (C1+C2)/2 and Jac(psi) = (C1-C2)/2, pointwise
    for (const SurfaceSpec& spec :
         {make_curve_product(1, 1), make_special_1(2, 0.5, 0, 0, +1),
          make_special_2(1, 0.5, 0, 2, +1),
          make_lift(Family::lift_S2xR, GeneratorDesc{RotationalDesc{1.0}})}) {
        const Surface s = build_surface(spec);
        const ChartRect r = s.interior(0.15);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const double x = r.x0 + (r.x1 - r.x0) * i / 3.0;
                const double y = r.y0 + (r.y1 - r.y0) * j / 3.0;
                const ImmersionJet jet = s.jet(x, y, 1);
                const auto [C1, C2] = kahler_functions(jet);
                const auto [jphi, jpsi] = factor_jacobians(jet);
                CHECK(std::abs(jphi - 0.5 * (C1 + C2)) < 1e-9);
                CHECK(std::abs(jpsi - 0.5 * (C1 - C2)) < 1e-9);
            }
        }
    }
}

TEST_CASE("projection rank defects") {
    // each curve-product projection has rank 1
    const Surface cp = build_surface(make_curve_product(1, 1));
    const auto [sp, sh] = projection_rank_defect(cp.jet(0.5, 0.5, 1));
    CHECK(sp < 1e-12);
    CHECK(sh < 1e-12);

    // special_1: psi is a curve, phi has full rank away from degeneracies
    const Surface s1 = build_surface(make_special_1(1, 0.5, 0, 0, +1));
    const ChartRect r = s1.interior(0.1);
    for (int i = 0; i < 10; ++i) {
        const auto [p, h] = projection_rank_defect(s1.jet(r.x0 + (r.x1 - r.x0) * i / 9.0, 0.6, 1));
        CHECK(h < 1e-9);
        CHECK(std::min(p, h) < 1e-5);
    }

    // Csquared equivalence, both directions, on a vanishing and a
    // nonvanishing surface
    for (const SurfaceSpec& spec :
         {make_special_1(1, 0.5, 0, 0, +1), make_special_1(2, 0.5, 0, 0, +1)}) {
        const Surface s = build_surface(spec);
        const ChartRect rr = s.interior(0.1);
        for (int i = 0; i < 8; ++i) {
            const double x = rr.x0 + (rr.x1 - rr.x0) * i / 7.0;
            const ImmersionJet jet = s.jet(x, 0.3, 1);
            const auto [C1, C2] = kahler_functions(jet);
            const auto [a, b] = projection_rank_defect(jet);
            const bool csq = std::abs(C1 * C1 - C2 * C2) < 1e-6;
            const bool rank = std::min(a, b) < 1e-5;
            CHECK(csq == rank);
        }
    }
}

TEST_CASE("shape operators, f tensor, and structural identities") {
    CHECK(adjugate2((Mat2() << 3.0, 0.0, 0.0, 7.0).finished())
              .isApprox((Mat2() << 7.0, 0.0, 0.0, 3.0).finished()));

    // eq:AH holds on vanishing-Theta surfaces
    const Surface v = build_surface(make_special_1(1, 0.5, 0, 0, +1));
    const ChartRect r = v.interior(0.1);
    for (int i = 0; i < 8; ++i) {
        const double x = r.x0 + (r.x1 - r.x0) * i / 7.0;
        const ShapeData sd = shape_and_f(v.jet(x, 0.3, 2));
        CHECK(sd.eqAH_residual < 1e-5);
        CHECK(sd.ricci_residual < 1e-6);
        CHECK(sd.relationAh_residual < 1e-9);
        CHECK_FALSE(sd.pseudo_umbilical);
    }

    // ... and fails on a nonvanishing one (it is a Theta = 0 identity)
    const Surface nv = build_surface(make_special_1(2, 0.5, 0, 0, +1));
    CHECK(shape_and_f(nv.jet(0.8, 0.3, 2)).eqAH_residual > 1e-3);
    // while Ricci commutation is PMC-generic
    CHECK(shape_and_f(nv.jet(0.8, 0.3, 2)).ricci_residual < 1e-6);

    // totally geodesic product: A_H vanishes, trivially pseudo-umbilical
    const Surface geo = build_surface(make_curve_product(0, 0, true));
    const ShapeData sd = shape_and_f(geo.jet(0.2, 0.2, 2));
    CHECK(sd.A_H.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(sd.pseudo_umbilical);
}

TEST_CASE("codazzi residuals") {
    const Surface cp = build_surface(make_curve_product(1, 1));
    CHECK(codazzi_residual(cp, 0.3, 0.4, 0, 1, 0, 1e-3) < 1e-4);
    // X = Y: both sides vanish by antisymmetry
    CHECK(codazzi_residual(cp, 0.3, 0.4, 0, 0, 1, 1e-3) < 1e-12);

    const Surface s1 = build_surface(make_special_1(1, 0.5, 0, 0, +1));
    const double coarse = codazzi_residual(s1, 0.9, 0.3, 1, 0, 1, 1e-3);
    const double fine = codazzi_residual(s1, 0.9, 0.3, 1, 0, 1, 5e-4);
    CHECK(coarse < 1e-3);
    if (coarse > 1e-9) CHECK(coarse / fine >= 2.0);

    CHECK_THROWS_AS(codazzi_residual(cp, 0.3, 0.4, 0, 2, 0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(codazzi_residual(cp, cp.domain().x1, 0.4, 0, 1, 0, 1e-3), std::domain_error);
}

TEST_CASE("extrinsic report assembles and serializes") {
    const Surface s = build_surface(make_special_1(1, 0.5, 0, 0, +1));
    const ExtrinsicReport r = analyze(s, 0.8, 0.4, 1e-4);
    CHECK(r.conformal);
    CHECK(std::abs(r.H_norm2 - 0.125) < 1e-4);
    CHECK(std::abs(r.theta) < 1e-6);
    CHECK(r.pmc_residual < 1e-4);
    CHECK(std::abs(r.C1 - r.C2) < 1e-9);
    CHECK(r.u == doctest::Approx(0.5 * std::log(r.E)));

    CHECK(extrinsic_csv_header() ==
          "x,y,E,F,G,u,Hnorm2,theta_re,theta_im,C1,C2,smin_dphi,smin_dpsi,pmc_residual,"
          "pseudo_umbilical");
    const std::string row = extrinsic_csv_row(r);
    CHECK(std::count(row.begin(), row.end(), ',') == 14);
}
