#pragma once

#include "s2h2/minkowski.hpp"

#include <stdexcept>

// Closed-form geometry of the ambient space S^2 x H^2 inside R^6_1: point and
// tangent types with their membership invariants, the product structure F,
// the complex structures J_1 = (J_S, J_H) and J_2 = (J_S, -J_H), the curvature
// tensor, and the orthogonal projection onto the tangent bundle.
//
// Conventions fixed once for the whole project:
//   * hyperboloid = upper sheet (component 5 positive),
//   * J_S v = p x v (Euclidean cross), J_H w = p x_L w (Lorentz cross with
//     <a x_L b, c>_L = det(a,b,c)),
//   * orientation of S^2 x H^2: (e_S, J_S e_S, e_H, J_H e_H) is positive.

namespace s2h2 {

inline constexpr double kMembershipTol = 1e-9;

struct ProductPoint {
    Vec6 p;

    Vec3 sphere() const { return sphere_part(p); }
    Vec3 hyper() const { return hyper_part(p); }

    double sphere_residual() const { return std::abs(sphere().squaredNorm() - 1.0); }
    double hyper_residual() const { return std::abs(lorentz_inner(hyper(), hyper()) + 1.0); }

    bool valid(double tol = kMembershipTol) const {
        return sphere_residual() <= tol && hyper_residual() <= tol && p[5] > 0;
    }

    static ProductPoint checked(const Vec6& v, double tol = kMembershipTol);
};

struct ProductTangent {
    ProductPoint base;
    Vec6 v;

    Vec3 sphere() const { return sphere_part(v); }
    Vec3 hyper() const { return hyper_part(v); }

    double tangency_residual() const {
        return std::max(std::abs(sphere().dot(base.sphere())),
                        std::abs(lorentz_inner(hyper(), base.hyper())));
    }

    static ProductTangent checked(const ProductPoint& base, const Vec6& v,
                                  double tol = kMembershipTol);
};

// F: (v1, v2) -> (v1, -v2).
inline Vec6 product_structure_F(const Vec6& v) {
    Vec6 r = v;
    r.tail<3>() = -r.tail<3>();
    return r;
}
inline ProductTangent product_structure_F(const ProductTangent& t) {
    return {t.base, product_structure_F(t.v)};
}

// J_j at base point p; j is 1 or 2.
Vec6 apply_J(int j, const ProductPoint& p, const Vec6& v);
inline ProductTangent apply_J(int j, const ProductTangent& t) {
    return {t.base, apply_J(j, t.base, t.v)};
}

// (A wedge B)C = <B,C> A - <A,C> B with the Minkowski inner product.
inline Vec6 wedge(const Vec6& a, const Vec6& b, const Vec6& c) {
    return minkowski_inner(b, c) * a - minkowski_inner(a, c) * b;
}

// Curvature tensor R~(x,y)z of S^2 x H^2 and its three alternative
// expressions (route 0 is the defining one; routes 1..3 must agree).
Vec6 riemann_tensor(const ProductTangent& x, const ProductTangent& y, const ProductTangent& z);
Vec6 riemann_tensor_route(int route, const ProductTangent& x, const ProductTangent& y,
                          const ProductTangent& z);

// Orthogonal projection of an arbitrary w onto T_p(S^2 x H^2). Idempotent,
// self-adjoint, annihilates span{Phi, Phi^}.
Vec6 tangent_project(const ProductPoint& p, const Vec6& w);

// Renormalize a drifted point back onto S^2 x H^2 (radial projection on the
// sphere factor, Lorentz rescale on the hyperboloid factor).
ProductPoint renormalize(const Vec6& p);

// Phi^ = (phi, -psi), the second null normal of S^2 x H^2 in R^6_1.
inline Vec6 phi_hat(const ProductPoint& p) { return product_structure_F(p.p); }

// Sign of the orientation of four tangent vectors at p against the reference
// orientation (e_S, J_S e_S, e_H, J_H e_H). Returns +1 or -1; 0 if degenerate.
int orientation_sign(const ProductPoint& p, const Vec6& v1, const Vec6& v2, const Vec6& v3,
                     const Vec6& v4);

} // namespace s2h2
