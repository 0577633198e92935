#include "s2h2/ambient.hpp"

namespace s2h2 {

ProductPoint ProductPoint::checked(const Vec6& v, double tol) {
    ProductPoint p{v};
    if (!p.valid(tol)) throw std::invalid_argument("point is not on S^2 x H^2");
    return p;
}

ProductTangent ProductTangent::checked(const ProductPoint& base, const Vec6& v, double tol) {
    ProductTangent t{base, v};
    if (t.tangency_residual() > tol)
        throw std::invalid_argument("vector is not tangent to S^2 x H^2");
    return t;
}

Vec6 apply_J(int j, const ProductPoint& p, const Vec6& v) {
    if (j != 1 && j != 2) throw std::invalid_argument("J index must be 1 or 2");
    const Vec3 s = p.sphere().cross(sphere_part(v));
    Vec3 h = lorentz_cross(p.hyper(), hyper_part(v));
    if (j == 2) h = -h;
    return join(s, h);
}

Vec6 riemann_tensor(const ProductTangent& x, const ProductTangent& y, const ProductTangent& z) {
    return riemann_tensor_route(0, x, y, z);
}

Vec6 riemann_tensor_route(int route, const ProductTangent& x, const ProductTangent& y,
                          const ProductTangent& z) {
    if ((x.base.p - y.base.p).cwiseAbs().maxCoeff() > 1e-12 ||
        (x.base.p - z.base.p).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("riemann_tensor: tangents at different base points");

    const Vec6 X = x.v, Y = y.v, Z = z.v;

    switch (route) {
        case 0: {
            const Vec6 FX = product_structure_F(X), FY = product_structure_F(Y);
            return wedge(0.5 * (X + FX), 0.5 * (Y + FY), Z) -
                   wedge(0.5 * (X - FX), 0.5 * (Y - FY), Z);
        }
        case 1: {
            // d(pi_1) keeps the sphere block, d(pi_2) the hyperboloid block.
            const Vec6 p1X = join(sphere_part(X), Vec3::Zero());
            const Vec6 p1Y = join(sphere_part(Y), Vec3::Zero());
            const Vec6 p2X = join(Vec3::Zero(), hyper_part(X));
            const Vec6 p2Y = join(Vec3::Zero(), hyper_part(Y));
            return wedge(p1X, p1Y, Z) - wedge(p2X, p2Y, Z);
        }
        case 2: {
            const Vec6 p1X = join(sphere_part(X), Vec3::Zero());
            const Vec6 p1Y = join(sphere_part(Y), Vec3::Zero());
            return -wedge(X, Y, Z) + wedge(p1X, Y, Z) + wedge(X, p1Y, Z);
        }
        case 3: {
            const Vec6 p2X = join(Vec3::Zero(), hyper_part(X));
            const Vec6 p2Y = join(Vec3::Zero(), hyper_part(Y));
            return wedge(X, Y, Z) - wedge(p2X, Y, Z) - wedge(X, p2Y, Z);
        }
        default:
            throw std::invalid_argument("riemann_tensor_route: route in 0..3");
    }
}

Vec6 tangent_project(const ProductPoint& p, const Vec6& w) {
    const Vec3 ps = p.sphere(), ph = p.hyper();
    const Vec3 ws = sphere_part(w), wh = hyper_part(w);
    return join(ws - ws.dot(ps) * ps, wh + lorentz_inner(wh, ph) * ph);
}

ProductPoint renormalize(const Vec6& p) {
    Vec3 s = sphere_part(p);
    Vec3 h = hyper_part(p);
    s /= s.norm();
    h /= std::sqrt(-lorentz_inner(h, h));
    if (h[2] < 0) h = -h;
    return {join(s, h)};
}

namespace {

// Any unit vector orthogonal to u on the sphere factor.
Vec3 sphere_unit_tangent(const Vec3& u) {
    Vec3 probe = std::abs(u[0]) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    Vec3 t = probe - probe.dot(u) * u;
    return t / t.norm();
}

Vec3 hyper_unit_tangent(const Vec3& u) {
    Vec3 probe = std::abs(u[0]) < std::abs(u[1]) ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    Vec3 t = probe + lorentz_inner(probe, u) * u;
    return t / std::sqrt(lorentz_inner(t, t));
}

double det6(const Vec6& a, const Vec6& b, const Vec6& c, const Vec6& d, const Vec6& e,
            const Vec6& f) {
    Eigen::Matrix<double, 6, 6> m;
    m << a, b, c, d, e, f;
    return m.determinant();
}

} // namespace

int orientation_sign(const ProductPoint& p, const Vec6& v1, const Vec6& v2, const Vec6& v3,
                     const Vec6& v4) {
    const Vec3 b1s = sphere_unit_tangent(p.sphere());
    const Vec3 b3h = hyper_unit_tangent(p.hyper());
    const Vec6 b1 = join(b1s, Vec3::Zero());
    const Vec6 b2 = join(p.sphere().cross(b1s), Vec3::Zero());
    const Vec6 b3 = join(Vec3::Zero(), b3h);
    const Vec6 b4 = join(Vec3::Zero(), lorentz_cross(p.hyper(), b3h));

    const Vec6 ph = phi_hat(p);
    const double ref = det6(b1, b2, b3, b4, p.p, ph);
    const double test = det6(v1, v2, v3, v4, p.p, ph);
    const double r = test * ref;
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

} // namespace s2h2
