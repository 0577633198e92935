#pragma once

#include "s2h2/ambient.hpp"
#include "s2h2/curves.hpp"
#include "s2h2/hode.hpp"

#include <functional>
#include <optional>
#include <variant>

// Constructors for the example families of PMC surfaces in S^2 x H^2, exposed
// as jet-evaluable immersions over rectangular charts. Every constructor
// produces analytic jets through order 3; a finite-difference mode exists to
// cross-check the analytic path.

namespace s2h2 {

enum class Family {
    curve_product,
    special_1,
    special_2,
    lift_S2xR,
    lift_H2xR,
    perturbed_curve_product, // negative control: curvature-modulated product
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

struct ChartRect {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
};

struct CurveProductParams {
    double k_alpha = 0, k_beta = 0;
    bool allow_minimal = false;
};

struct SpecialParams {
    double a = 1, b = 0.5, c = 0, h0 = 0;
    int slope_sign = +1;
};

struct CylinderDesc {
    double k = 1;
};
struct RotationalDesc {
    double H = 1;
};
using GeneratorDesc = std::variant<CylinderDesc, RotationalDesc>;

struct LiftParams {
    GeneratorDesc generator;
    double geodesic_angle = 0;
    bool allow_minimal = false;
};

struct PerturbedParams {
    double k_alpha = 1, k_beta = 1;
    double amplitude = 0.01;
};

struct SurfaceSpec {
    Family family = Family::curve_product;
    std::variant<CurveProductParams, SpecialParams, LiftParams, PerturbedParams> params;
    std::optional<ChartRect> chart;
};

struct ImmersionJet {
    double x = 0, y = 0;
    int order = 2;
    bool finite_difference = false;
    Vec6 p, px, py, pxx, pxy, pyy;
    Vec6 pxxx, pxxy, pxyy, pyyy; // valid when order == 3

    const Vec6& d(int i, int j) const;
    ProductPoint point() const { return {p}; }
};

// Generating data for the trivial lifts: a vertical cylinder over a
// constant-curvature curve, or a rotational CMC sphere profile in
// M^2(eps) x R integrated in arc length. The extra coordinate w is the
// conformal (Mercator) chart parameter with dw/ds = 1/sn_eps(theta).
struct RotationalProfile {
    int eps = +1; // +1: S^2 x R, -1: H^2 x R
    double H = 1;
    double step = 1e-3;
    struct Sample {
        double s, theta, t, sigma, w;
    };
    std::vector<Sample> samples;
    double w_min() const { return samples.front().w; }
    double w_max() const { return samples.back().w; }
};
using CMCGenerator = std::variant<CylinderDesc, RotationalProfile>;

RotationalProfile rotational_cmc_profile(int eps, double H, double step = 1e-3);

struct BuildOptions {
    double ode_step = 1e-3;
    double x_max = 5.0; // profile integration horizon for the special families
};

class Surface {
  public:
    Family family() const { return spec_.family; }
    const SurfaceSpec& spec() const { return spec_; }
    const ChartRect& domain() const { return domain_; }
    ChartRect interior(double margin_fraction = 0.05) const;

    ImmersionJet jet(double x, double y, int order = 3) const;
    ImmersionJet fd_jet(double x, double y, double step = 1e-4) const; // order 2

    std::optional<double> expected_Hnorm2() const { return expected_Hnorm2_; }
    std::optional<double> expected_theta() const { return expected_theta_; }
    bool expect_vanishing_theta() const;

  private:
    SurfaceSpec spec_;
    ChartRect domain_;
    std::optional<double> expected_Hnorm2_;
    std::optional<double> expected_theta_;
    std::function<void(double, double, int, ImmersionJet&)> eval_;

    friend Surface build_surface(const SurfaceSpec&, const BuildOptions&);
    friend Surface build_lift(Family, const CMCGenerator&, double, bool, const BuildOptions&);
};

Surface build_surface(const SurfaceSpec& spec, const BuildOptions& opts = {});

// Convenience spec builders mirroring the constructor operations.
SurfaceSpec make_curve_product(double k_alpha, double k_beta, bool allow_minimal = false);
SurfaceSpec make_special_1(double a, double b, double c, double h0, int slope_sign = +1);
SurfaceSpec make_special_2(double a, double b, double c, double h0, int slope_sign = +1);
SurfaceSpec make_lift(Family factor, const GeneratorDesc& generator, double geodesic_angle = 0,
                      bool allow_minimal = false);
SurfaceSpec make_perturbed_curve_product(double k_alpha, double k_beta, double amplitude = 0.01);

// Lift of an already-integrated generator (bypasses the descriptor path).
Surface build_lift(Family factor, const CMCGenerator& generator, double geodesic_angle = 0,
                   bool allow_minimal = false, const BuildOptions& opts = {});

} // namespace s2h2
