#include "s2h2/extrinsic.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

namespace s2h2 {

namespace {

Vec6 lowered(const Vec6& v) {
    Vec6 r = v;
    r[5] = -r[5];
    return r;
}

// Expansion of h on an orthonormal tangent frame.
struct FrameSecondFundamental {
    Vec6 h11, h12, h22;
};

FrameSecondFundamental frame_h(const ImmersionJet& jet, const FirstFundamental& g,
                               const SecondFundamental& h) {
    const double al = 1.0 / std::sqrt(g.E);
    const Vec6 e2raw = jet.py - (g.F / g.E) * jet.px;
    const double be = 1.0 / std::sqrt(minkowski_inner(e2raw, e2raw));
    const double q = g.F / g.E;
    FrameSecondFundamental r;
    r.h11 = al * al * h.hxx;
    r.h12 = al * be * (h.hxy - q * h.hxx);
    r.h22 = be * be * (h.hyy - 2 * q * h.hxy + q * q * h.hxx);
    return r;
}

} // namespace

FirstFundamental first_fundamental(const ImmersionJet& jet) {
    return {minkowski_inner(jet.px, jet.px), minkowski_inner(jet.px, jet.py),
            minkowski_inner(jet.py, jet.py)};
}

TangentFrame tangent_frame(const ImmersionJet& jet) {
    const FirstFundamental g = first_fundamental(jet);
    if (g.det() <= kRankTol) throw std::invalid_argument("tangent_frame: rank-deficient jet");
    TangentFrame f;
    f.e1 = jet.px / std::sqrt(g.E);
    Vec6 w = jet.py - (g.F / g.E) * jet.px;
    f.e2 = w / std::sqrt(minkowski_inner(w, w));
    return f;
}

NormalFrame normal_frame(const ImmersionJet& jet) {
    Eigen::MatrixXd A(4, 6);
    A.row(0) = lowered(jet.px).transpose();
    A.row(1) = lowered(jet.py).transpose();
    A.row(2) = lowered(jet.p).transpose();
    A.row(3) = lowered(phi_hat(jet.point())).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    Vec6 k1 = svd.matrixV().col(4);
    Vec6 k2 = svd.matrixV().col(5);
    // Minkowski Gram-Schmidt; the normal plane of Sigma in T(S^2 x H^2) is
    // spacelike, so both norms are positive.
    NormalFrame n;
    n.n1 = k1 / std::sqrt(minkowski_inner(k1, k1));
    Vec6 w = k2 - minkowski_inner(k2, n.n1) * n.n1;
    n.n2 = w / std::sqrt(minkowski_inner(w, w));
    return n;
}

SecondFundamental second_fundamental(const ImmersionJet& jet) {
    const FirstFundamental g = first_fundamental(jet);
    if (g.det() <= kRankTol)
        throw std::invalid_argument("second_fundamental: rank-deficient jet");
    const ProductPoint pt = jet.point();
    const double inv_det = 1.0 / g.det();
    auto split = [&](const Vec6& second) {
        const Vec6 T = tangent_project(pt, second);
        const double c1 = minkowski_inner(T, jet.px);
        const double c2 = minkowski_inner(T, jet.py);
        const double a = (g.G * c1 - g.F * c2) * inv_det;
        const double b = (g.E * c2 - g.F * c1) * inv_det;
        return Vec6(T - a * jet.px - b * jet.py);
    };
    return {split(jet.pxx), split(jet.pxy), split(jet.pyy)};
}

std::pair<Vec6, double> mean_curvature(const ImmersionJet& jet) {
    const FirstFundamental g = first_fundamental(jet);
    const SecondFundamental h = second_fundamental(jet);
    const Vec6 H =
        0.5 * (g.G * h.hxx - 2 * g.F * h.hxy + g.E * h.hyy) / g.det();
    return {H, minkowski_inner(H, H)};
}

std::pair<Vec6, Vec6> oriented_normal_pair(const ImmersionJet& jet) {
    const auto [H, H2] = mean_curvature(jet);
    if (H2 <= 0) throw std::invalid_argument("oriented_normal_pair: H = 0");
    const Vec6 eta = H / std::sqrt(H2);
    const NormalFrame n = normal_frame(jet);
    const double a1 = minkowski_inner(n.n1, eta), a2 = minkowski_inner(n.n2, eta);
    Vec6 raw = std::abs(a1) < std::abs(a2) ? n.n1 : n.n2;
    Vec6 tilde = raw - minkowski_inner(raw, eta) * eta;
    tilde /= std::sqrt(minkowski_inner(tilde, tilde));
    const TangentFrame f = tangent_frame(jet);
    if (orientation_sign(jet.point(), f.e1, f.e2, tilde, eta) < 0) tilde = -tilde;
    return {eta, tilde};
}

bool chart_is_conformal(const ImmersionJet& jet, double tol) {
    const FirstFundamental g = first_fundamental(jet);
    const double scale = std::max(1.0, std::max(std::abs(g.E), std::abs(g.G)));
    return std::abs(g.F) <= tol * scale && std::abs(g.E - g.G) <= tol * scale;
}

Complex hopf_coefficient(const ImmersionJet& jet) {
    return hopf_coefficient(jet, mean_curvature(jet).first);
}

Complex hopf_coefficient(const ImmersionJet& jet, const Vec6& H_vec) {
    if (!chart_is_conformal(jet))
        throw std::invalid_argument("hopf_coefficient: chart is not conformal");
    const SecondFundamental h = second_fundamental(jet);
    const Complex term1(minkowski_inner(h.hxx - h.hyy, H_vec),
                        -2.0 * minkowski_inner(h.hxy, H_vec));
    const Vec6 Fx = product_structure_F(jet.px);
    const Vec6 Fy = product_structure_F(jet.py);
    const Complex term2 =
        0.25 * Complex(minkowski_inner(Fx, jet.px) - minkowski_inner(Fy, jet.py),
                       -2.0 * minkowski_inner(Fx, jet.py));
    return term1 + term2;
}

std::pair<double, double> kahler_functions(const ImmersionJet& jet) {
    const TangentFrame f = tangent_frame(jet);
    const ProductPoint pt = jet.point();
    return {minkowski_inner(apply_J(1, pt, f.e1), f.e2),
            minkowski_inner(apply_J(2, pt, f.e1), f.e2)};
}

ShapeData shape_and_f(const ImmersionJet& jet) {
    const FirstFundamental g = first_fundamental(jet);
    if (g.det() <= kRankTol) throw std::invalid_argument("shape_and_f: rank-deficient jet");
    const SecondFundamental h = second_fundamental(jet);
    const TangentFrame fr = tangent_frame(jet);
    const FrameSecondFundamental hf = frame_h(jet, g, h);
    const auto [H, H2] = mean_curvature(jet);

    auto shape_of = [&](const Vec6& xi) {
        Mat2 m;
        m << minkowski_inner(hf.h11, xi), minkowski_inner(hf.h12, xi),
            minkowski_inner(hf.h12, xi), minkowski_inner(hf.h22, xi);
        return m;
    };

    ShapeData out;
    out.A_H = shape_of(H);

    // f in the orthonormal frame
    const Vec6 Fe1 = product_structure_F(fr.e1), Fe2 = product_structure_F(fr.e2);
    out.f_mat << minkowski_inner(Fe1, fr.e1), minkowski_inner(Fe1, fr.e2),
        minkowski_inner(Fe2, fr.e1), minkowski_inner(Fe2, fr.e2);

    const NormalFrame nf = normal_frame(jet);
    const Mat2 An1 = shape_of(nf.n1), An2 = shape_of(nf.n2);
    out.ricci_residual = (An1 * An2 - An2 * An1).norm();

    if (H2 > 0) {
        out.A_perp = std::sqrt(H2) * shape_of(oriented_normal_pair(jet).second);
    } else {
        out.A_perp.setZero();
    }

    const Mat2 predicted = H2 * Mat2::Identity() - out.f_mat / 8.0 + adjugate2(out.f_mat) / 8.0;
    out.eqAH_residual = (out.A_H - predicted).cwiseAbs().maxCoeff();
    out.pseudo_umbilical = (out.A_H - H2 * Mat2::Identity()).cwiseAbs().maxCoeff() <
                           1e-7 * (1.0 + out.A_H.cwiseAbs().maxCoeff());

    // eq:relationAh cross-route: shape operator from the chart metric
    // (g^{-1} [<h_ij, xi>]) pushed to the orthonormal frame vs the direct
    // frame expansion above.
    {
        Mat2 gm;
        gm << g.E, g.F, g.F, g.G;
        const Mat2 gi = gm.inverse();
        double worst = 0;
        for (const Vec6* xi : {&H, &nf.n1, &nf.n2}) {
            Mat2 hm;
            hm << minkowski_inner(h.hxx, *xi), minkowski_inner(h.hxy, *xi),
                minkowski_inner(h.hxy, *xi), minkowski_inner(h.hyy, *xi);
            const Mat2 A_chart = gi * hm; // mixed tensor in the chart basis
            // frame vectors in chart coordinates
            const double al = 1.0 / std::sqrt(g.E);
            const double be = 1.0 / std::sqrt(g.G - g.F * g.F / g.E);
            Eigen::Matrix2d basis; // columns: e1, e2 in (dx, dy) components
            basis << al, -be * g.F / g.E, 0, be;
            const Mat2 A_frame = basis.inverse() * A_chart * basis;
            // compare <A e_i, e_j> (frame is orthonormal, so entries match)
            const Mat2 direct = shape_of(*xi);
            worst = std::max(worst, (A_frame - direct).cwiseAbs().maxCoeff());
        }
        out.relationAh_residual = worst;
    }
    return out;
}

namespace {

// Orthonormal bases of the factor tangent planes, oriented by the factor
// rotations.
std::pair<Vec3, Vec3> sphere_basis(const Vec3& p) {
    Vec3 probe = std::abs(p[0]) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    Vec3 s1 = probe - probe.dot(p) * p;
    s1 /= s1.norm();
    return {s1, p.cross(s1)};
}

std::pair<Vec3, Vec3> hyper_basis(const Vec3& p) {
    Vec3 probe = std::abs(p[0]) < std::abs(p[1]) ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    Vec3 t1 = probe + lorentz_inner(probe, p) * p;
    t1 /= std::sqrt(lorentz_inner(t1, t1));
    return {t1, lorentz_cross(p, t1)};
}

} // namespace

std::pair<double, double> projection_rank_defect(const ImmersionJet& jet) {
    const TangentFrame f = tangent_frame(jet);
    const auto [s1, s2] = sphere_basis(jet.point().sphere());
    const auto [t1, t2] = hyper_basis(jet.point().hyper());
    Mat2 Mphi, Mpsi;
    Mphi << sphere_part(f.e1).dot(s1), sphere_part(f.e2).dot(s1), sphere_part(f.e1).dot(s2),
        sphere_part(f.e2).dot(s2);
    Mpsi << lorentz_inner(hyper_part(f.e1), t1), lorentz_inner(hyper_part(f.e2), t1),
        lorentz_inner(hyper_part(f.e1), t2), lorentz_inner(hyper_part(f.e2), t2);
    Eigen::JacobiSVD<Mat2> sp(Mphi), sh(Mpsi);
    return {sp.singularValues()[1], sh.singularValues()[1]};
}

std::pair<double, double> factor_jacobians(const ImmersionJet& jet) {
    const TangentFrame f = tangent_frame(jet);
    const auto [s1, s2] = sphere_basis(jet.point().sphere());
    const auto [t1, t2] = hyper_basis(jet.point().hyper());
    Mat2 Mphi, Mpsi;
    Mphi << sphere_part(f.e1).dot(s1), sphere_part(f.e2).dot(s1), sphere_part(f.e1).dot(s2),
        sphere_part(f.e2).dot(s2);
    Mpsi << lorentz_inner(hyper_part(f.e1), t1), lorentz_inner(hyper_part(f.e2), t1),
        lorentz_inner(hyper_part(f.e1), t2), lorentz_inner(hyper_part(f.e2), t2);
    return {Mphi.determinant(), Mpsi.determinant()};
}

double pmc_residual(const Surface& surf, double x, double y, double fd_step) {
    const ChartRect& r = surf.domain();
    if (x - fd_step < r.x0 || x + fd_step > r.x1 || y - fd_step < r.y0 || y + fd_step > r.y1)
        throw std::domain_error("pmc_residual: chart-boundary proximity < fd_step");

    const ImmersionJet c = surf.jet(x, y, 2);
    const TangentFrame f = tangent_frame(c);
    const FirstFundamental g = first_fundamental(c);
    const ProductPoint pt = c.point();

    auto Hat = [&](double ax, double ay) { return mean_curvature(surf.jet(ax, ay, 2)).first; };
    const Vec6 dHx = (Hat(x + fd_step, y) - Hat(x - fd_step, y)) / (2 * fd_step);
    const Vec6 dHy = (Hat(x, y + fd_step) - Hat(x, y - fd_step)) / (2 * fd_step);

    auto normal_part = [&](const Vec6& w) {
        Vec6 v = tangent_project(pt, w);
        v -= minkowski_inner(v, f.e1) * f.e1;
        v -= minkowski_inner(v, f.e2) * f.e2;
        return std::sqrt(minkowski_inner(v, v));
    };
    return std::max(normal_part(dHx) / std::sqrt(g.E), normal_part(dHy) / std::sqrt(g.G));
}

double codazzi_residual(const Surface& surf, double x, double y, int X, int Y, int Z,
                        double fd_step) {
    if (X < 0 || X > 1 || Y < 0 || Y > 1 || Z < 0 || Z > 1)
        throw std::invalid_argument("codazzi_residual: directions are chart indices 0 or 1");
    const ChartRect& r = surf.domain();
    if (x - fd_step < r.x0 || x + fd_step > r.x1 || y - fd_step < r.y0 || y + fd_step > r.y1)
        throw std::domain_error("codazzi_residual: chart-boundary proximity < fd_step");

    const ImmersionJet c = surf.jet(x, y, 3);
    const FirstFundamental g = first_fundamental(c);
    const SecondFundamental h = second_fundamental(c);
    const TangentFrame fr = tangent_frame(c);
    const ProductPoint pt = c.point();

    // Christoffel symbols from analytic metric derivatives
    const double Ex = 2 * minkowski_inner(c.pxx, c.px), Ey = 2 * minkowski_inner(c.pxy, c.px);
    const double Gx = 2 * minkowski_inner(c.pxy, c.py), Gy = 2 * minkowski_inner(c.pyy, c.py);
    const double Fx = minkowski_inner(c.pxx, c.py) + minkowski_inner(c.px, c.pxy);
    const double Fy = minkowski_inner(c.pxy, c.py) + minkowski_inner(c.px, c.pyy);
    const double dg[2][2][2] = {{{Ex, Fx}, {Fx, Gx}}, {{Ey, Fy}, {Fy, Gy}}};
    // dg[k][i][j] = d_k g_ij with g_00 = E, g_01 = F, g_11 = G
    double gamma1[2][2][2]; // first kind, gamma1[i][j][k] = Gamma_{ij,k}
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                gamma1[i][j][k] = 0.5 * (dg[i][j][k] + dg[j][i][k] - dg[k][i][j]);
    Mat2 gm, gi;
    gm << g.E, g.F, g.F, g.G;
    gi = gm.inverse();
    double gamma[2][2][2]; // gamma[i][j][l] = Gamma^l_{ij}
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l)
                gamma[i][j][l] = gi(l, 0) * gamma1[i][j][0] + gi(l, 1) * gamma1[i][j][1];

    auto h_comp = [](const SecondFundamental& s, int i, int j) -> const Vec6& {
        if (i == 0 && j == 0) return s.hxx;
        if (i == 1 && j == 1) return s.hyy;
        return s.hxy;
    };

    auto normal_project = [&](const Vec6& w) {
        Vec6 v = tangent_project(pt, w);
        v -= minkowski_inner(v, fr.e1) * fr.e1;
        v -= minkowski_inner(v, fr.e2) * fr.e2;
        return v;
    };

    // nabla^perp_A h(B,C) by central differences of the h field
    auto nabla_perp_h = [&](int A, int B, int C) {
        const double dx = A == 0 ? fd_step : 0.0;
        const double dy = A == 0 ? 0.0 : fd_step;
        const SecondFundamental hp = second_fundamental(surf.jet(x + dx, y + dy, 2));
        const SecondFundamental hm = second_fundamental(surf.jet(x - dx, y - dy, 2));
        const Vec6 D = (h_comp(hp, B, C) - h_comp(hm, B, C)) / (2 * fd_step);
        Vec6 v = normal_project(D);
        // subtract h(nabla_A B, C) + h(B, nabla_A C)
        for (int l = 0; l < 2; ++l) {
            v -= gamma[A][B][l] * h_comp(h, l, C);
            v -= gamma[A][C][l] * h_comp(h, B, l);
        }
        return v;
    };

    const Vec6 lhs = nabla_perp_h(X, Y, Z) - nabla_perp_h(Y, X, Z);

    const Vec6 dirs[2] = {c.px, c.py};
    const double gzY = minkowski_inner(dirs[Y], dirs[Z]);
    const double gzX = minkowski_inner(dirs[X], dirs[Z]);
    const Vec6 wedge_vec = gzY * dirs[X] - gzX * dirs[Y];
    const Vec6 rhs = 0.5 * normal_project(product_structure_F(wedge_vec));

    const Vec6 res = lhs - rhs;
    return std::sqrt(minkowski_inner(res, res));
}

ExtrinsicReport analyze(const Surface& surf, double x, double y, double fd_step) {
    const ImmersionJet jet = surf.jet(x, y, 3);
    ExtrinsicReport r;
    r.x = x;
    r.y = y;
    const FirstFundamental g = first_fundamental(jet);
    r.E = g.E;
    r.F_metric = g.F;
    r.G = g.G;
    r.conformal = chart_is_conformal(jet);
    r.u = r.conformal ? 0.5 * std::log(g.E) : std::numeric_limits<double>::quiet_NaN();
    const auto [H, H2] = mean_curvature(jet);
    r.H_vec = H;
    r.H_norm2 = H2;
    r.theta = r.conformal ? hopf_coefficient(jet, H)
                          : Complex(std::numeric_limits<double>::quiet_NaN(), 0);
    std::tie(r.C1, r.C2) = kahler_functions(jet);
    const ShapeData sd = shape_and_f(jet);
    r.A_H = sd.A_H;
    r.A_perp = sd.A_perp;
    r.f_mat = sd.f_mat;
    r.pseudo_umbilical = sd.pseudo_umbilical;
    r.ricci_residual = sd.ricci_residual;
    r.relationAh_residual = sd.relationAh_residual;
    std::tie(r.smin_dphi, r.smin_dpsi) = projection_rank_defect(jet);
    r.pmc_residual = pmc_residual(surf, x, y, fd_step);
    return r;
}

std::string extrinsic_csv_header() {
    return "x,y,E,F,G,u,Hnorm2,theta_re,theta_im,C1,C2,smin_dphi,smin_dpsi,pmc_residual,"
           "pseudo_umbilical";
}

std::string extrinsic_csv_row(const ExtrinsicReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << r.x << ',' << r.y << ',' << r.E << ',' << r.F_metric << ',' << r.G << ',' << r.u << ','
       << r.H_norm2 << ',' << r.theta.real() << ',' << r.theta.imag() << ',' << r.C1 << ','
       << r.C2 << ',' << r.smin_dphi << ',' << r.smin_dpsi << ',' << r.pmc_residual << ','
       << (r.pseudo_umbilical ? 1 : 0);
    return os.str();
}

} // namespace s2h2
