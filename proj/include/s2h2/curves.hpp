#pragma once

#include "s2h2/jets.hpp"
#include "s2h2/minkowski.hpp"

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

// Curves in the two factors: closed-form constant-geodesic-curvature families
// and a prescribed-speed / prescribed-curvature Frenet integrator. Signed
// curvature is taken with respect to the normal N = J T, where J is the
// factor rotation from ambient.hpp.

namespace s2h2 {

enum class Factor { sphere, hyperbolic };

struct CurveSample {
    double x = 0;
    Vec3 pos = Vec3::Zero();
    Vec3 d1 = Vec3::Zero();
    Vec3 d2 = Vec3::Zero();
    Vec3 d3 = Vec3::Zero();
};

// Unit-speed latitude circle of geodesic curvature k on S^2 (k = 0 gives the
// equator). Polar angle measured from (0,0,1).
CurveSample sphere_circle(double k, double t);

// Unit-speed curve of constant geodesic curvature k >= 0 on the upper
// hyperboloid: geodesic (k = 0), hypercycle (k < 1), horocycle (k = 1) or
// circle (k > 1).
CurveSample hyperbolic_constant_curvature(double k, double s);

struct PrescribedCurveProblem {
    Factor factor = Factor::hyperbolic;
    std::function<Jet1(double)> speed;            // > 0 on the range
    std::function<Jet1(double)> signed_curvature; // with respect to N = J T
    Vec3 start_pos;
    Vec3 start_dir; // unit tangent
    double x0 = 0, x1 = 1;
    double step = 1e-3;
};

std::vector<CurveSample> frenet_integrate(const PrescribedCurveProblem& prob);

// Uniform jet access to a curve, closed-form or integrated. Integrated curves
// interpolate position and velocity with cubic Hermite data between the RK4
// samples and rebuild d2, d3 from the ODE right-hand side.
class CurveModel {
  public:
    static CurveModel closed_form(Factor f, double k);
    static CurveModel geodesic(Factor f, double angle); // through the base point, direction angle
    static CurveModel integrated(const PrescribedCurveProblem& prob);

    CurveSample jet(double x) const;
    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    Factor factor() const { return factor_; }

  private:
    CurveModel() = default;
    Factor factor_ = Factor::hyperbolic;
    double x_min_ = -1e30, x_max_ = 1e30;
    std::function<CurveSample(double)> eval_;
};

} // namespace s2h2
