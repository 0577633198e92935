#pragma once

#include <Eigen/Dense>

// Flat-space primitives of R^6_1 = R^3 x R^3_1: the Minkowski inner product
// of signature (+,+,+,+,+,-) and the factor-level products used throughout.
// Components 0..2 belong to the sphere factor, components 3..5 to the
// hyperboloid factor; component 5 is the timelike coordinate.

namespace s2h2 {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat2 = Eigen::Matrix2d;

inline double minkowski_inner(const Vec6& u, const Vec6& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3] + u[4] * v[4] - u[5] * v[5];
}

// Lorentz inner product on the hyperboloid factor R^3_1, signature (+,+,-).
inline double lorentz_inner(const Vec3& u, const Vec3& v) {
    return u[0] * v[0] + u[1] * v[1] - u[2] * v[2];
}

// Lorentz cross product: <lorentz_cross(a,b), c>_L = det(a,b,c).
// J_{H^2} w = p x_L w squares to -id on tangent planes of the hyperboloid
// and preserves them.
inline Vec3 lorentz_cross(const Vec3& a, const Vec3& b) {
    return Vec3(a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                -(a[0] * b[1] - a[1] * b[0]));
}

inline Vec3 sphere_part(const Vec6& v) { return v.head<3>(); }
inline Vec3 hyper_part(const Vec6& v) { return v.tail<3>(); }

inline Vec6 join(const Vec3& s, const Vec3& h) {
    Vec6 v;
    v << s[0], s[1], s[2], h[0], h[1], h[2];
    return v;
}

inline double minkowski_norm(const Vec6& v) {
    return std::sqrt(std::abs(minkowski_inner(v, v)));
}

} // namespace s2h2
