#pragma once

#include "s2h2/ambient.hpp"
#include "s2h2/curves.hpp"

#include <random>

// Shared test-side oracles. These deliberately avoid the library's own
// computation paths: curvature is measured from raw derivative data, and
// derivatives are cross-checked with central differences.

namespace s2h2::testing {

inline std::mt19937& rng() {
    static std::mt19937 gen(20240517u);
    return gen;
}

inline double gauss() {
    static std::normal_distribution<double> d(0.0, 1.0);
    return d(rng());
}

inline ProductPoint random_point() {
    Vec3 s(gauss(), gauss(), gauss());
    s /= s.norm();
    const double x = gauss(), y = gauss();
    const Vec3 h(x, y, std::sqrt(1.0 + x * x + y * y));
    return {join(s, h)};
}

inline ProductTangent random_tangent(const ProductPoint& p) {
    Vec6 w;
    for (int i = 0; i < 6; ++i) w[i] = gauss();
    return {p, tangent_project(p, w)};
}

// Covariant acceleration of a curve sample inside its factor, from raw
// position/derivative data only.
inline Vec3 covariant_accel(Factor f, const CurveSample& s) {
    if (f == Factor::sphere) return s.d2 - s.d2.dot(s.pos) * s.pos;
    return s.d2 + lorentz_inner(s.d2, s.pos) * s.pos;
}

inline double measured_speed(Factor f, const CurveSample& s) {
    return f == Factor::sphere ? s.d1.norm() : std::sqrt(lorentz_inner(s.d1, s.d1));
}

// Signed geodesic curvature with respect to N = J T.
inline double measured_curvature(Factor f, const CurveSample& s) {
    const Vec3 acc = covariant_accel(f, s);
    const double v = measured_speed(f, s);
    if (f == Factor::sphere) return acc.dot(s.pos.cross(s.d1)) / (v * v * v);
    return lorentz_inner(acc, lorentz_cross(s.pos, s.d1)) / (v * v * v);
}

inline double factor_membership_residual(Factor f, const Vec3& p) {
    return f == Factor::sphere ? std::abs(p.squaredNorm() - 1.0)
                               : std::abs(lorentz_inner(p, p) + 1.0);
}

} // namespace s2h2::testing
