#include "s2h2/frames.hpp"

#include <cmath>

namespace s2h2 {

namespace {

struct CVec6 {
    Vec6 re, im;
};

// bilinear (not hermitian) extension of the Minkowski inner product
Complex cinner(const CVec6& a, const CVec6& b) {
    return {minkowski_inner(a.re, b.re) - minkowski_inner(a.im, b.im),
            minkowski_inner(a.re, b.im) + minkowski_inner(a.im, b.re)};
}

CVec6 conj(const CVec6& a) { return {a.re, Vec6(-a.im)}; }

CVec6 apply_J_c(int j, const ProductPoint& p, const CVec6& v) {
    return {apply_J(j, p, v.re), apply_J(j, p, v.im)};
}

const double kSqrt2 = std::sqrt(2.0);

} // namespace

FrenetData frenet_data(const ImmersionJet& jet) {
    if (!chart_is_conformal(jet))
        throw std::invalid_argument("frenet_data: chart is not conformal");

    FrenetData out;
    const FirstFundamental g = first_fundamental(jet);
    out.u = 0.5 * std::log(g.E);
    std::tie(out.C1, out.C2) = kahler_functions(jet);

    const auto [H, H2] = mean_curvature(jet);
    if (H2 <= 0) throw std::invalid_argument("frenet_data: H = 0");
    out.H_norm = std::sqrt(H2);
    std::tie(out.eta, out.eta_tilde) = oriented_normal_pair(jet);

    const ProductPoint pt = jet.point();
    const CVec6 dz{Vec6(0.5 * jet.px), Vec6(-0.5 * jet.py)};
    const CVec6 xi{Vec6(out.eta / kSqrt2), Vec6(-out.eta_tilde / kSqrt2)};
    const CVec6 xibar = conj(xi);

    out.gamma1 = cinner(apply_J_c(1, pt, dz), xibar);
    out.gamma2 = cinner(apply_J_c(2, pt, dz), xi);

    const CVec6 ddz{Vec6(0.25 * (jet.pxx - jet.pyy)), Vec6(-0.5 * jet.pxy)};
    out.f1 = cinner(ddz, xibar);
    out.f2 = cinner(ddz, xi);

    const double e2u = g.E;
    out.gammanorm_residual =
        std::max(std::abs(std::norm(out.gamma1) - 0.5 * e2u * (1 - out.C1 * out.C1)),
                 std::abs(std::norm(out.gamma2) - 0.5 * e2u * (1 - out.C2 * out.C2)));
    const CVec6 Fdz{product_structure_F(dz.re), product_structure_F(dz.im)};
    out.gamma_product_residual = std::abs(out.gamma1 * out.gamma2 - cinner(Fdz, dz));
    out.xi_norm_residual =
        std::max(std::abs(cinner(xi, xibar) - 1.0), std::abs(cinner(xi, xi)));
    return out;
}

FrenetPdeResiduals frenet_pde_residuals(const Surface& surf, double x, double y, double fd_step) {
    const ChartRect& r = surf.domain();
    if (x - fd_step < r.x0 || x + fd_step > r.x1 || y - fd_step < r.y0 || y + fd_step > r.y1)
        throw std::domain_error("frenet_pde_residuals: chart-boundary proximity < fd_step");

    const ImmersionJet cj = surf.jet(x, y, 2);
    const FrenetData c = frenet_data(cj);
    const FrenetData xp = frenet_data(surf.jet(x + fd_step, y, 2));
    const FrenetData xm = frenet_data(surf.jet(x - fd_step, y, 2));
    const FrenetData yp = frenet_data(surf.jet(x, y + fd_step, 2));
    const FrenetData ym = frenet_data(surf.jet(x, y - fd_step, 2));

    auto dz = [&](auto field) {
        const Complex gx = (Complex(field(xp)) - Complex(field(xm))) / (2 * fd_step);
        const Complex gy = (Complex(field(yp)) - Complex(field(ym))) / (2 * fd_step);
        return 0.5 * (gx - Complex(0, 1) * gy);
    };
    auto dzbar = [&](auto field) {
        const Complex gx = (Complex(field(xp)) - Complex(field(xm))) / (2 * fd_step);
        const Complex gy = (Complex(field(yp)) - Complex(field(ym))) / (2 * fd_step);
        return 0.5 * (gx + Complex(0, 1) * gy);
    };

    // dz u analytically from the jet
    const FirstFundamental g = first_fundamental(cj);
    const double ux = minkowski_inner(cj.pxx, cj.px) / g.E;
    const double uy = minkowski_inner(cj.pxy, cj.px) / g.E;
    const Complex dzu = 0.5 * Complex(ux, -uy);

    const double e2u = g.E;
    const double Hn = c.H_norm;
    const Complex I(0, 1);

    FrenetPdeResiduals out;
    const Complex gam[2] = {c.gamma1, c.gamma2};
    const Complex ff[2] = {c.f1, c.f2};
    const double CC[2] = {c.C1, c.C2};

    for (int j = 0; j < 2; ++j) {
        const Complex lhs_dzC =
            j == 0 ? dz([](const FrenetData& d) { return Complex(d.C1, 0); })
                   : dz([](const FrenetData& d) { return Complex(d.C2, 0); });
        const Complex rhs_dzC =
            2.0 * I * std::conj(gam[j]) * ff[j] / e2u - I * Hn * gam[j] / kSqrt2;
        out.dzC[j] = std::abs(lhs_dzC - rhs_dzC);

        const Complex lhs_dzbar_g =
            j == 0 ? dzbar([](const FrenetData& d) { return d.gamma1; })
                   : dzbar([](const FrenetData& d) { return d.gamma2; });
        out.dzbar_gamma[j] = std::abs(lhs_dzbar_g + I * Hn * e2u * CC[j] / kSqrt2);

        const Complex lhs_dz_g = j == 0 ? dz([](const FrenetData& d) { return d.gamma1; })
                                        : dz([](const FrenetData& d) { return d.gamma2; });
        out.dz_gamma[j] = std::abs(lhs_dz_g - (2.0 * dzu * gam[j] - 2.0 * I * CC[j] * ff[j]));
    }

    const Complex lhs_f1 = dzbar([](const FrenetData& d) { return d.f1; });
    const Complex lhs_f2 = dzbar([](const FrenetData& d) { return d.f2; });
    out.dzbar_f[0] = std::abs(lhs_f1 - I * e2u * 0.25 * c.C2 * c.gamma1);
    out.dzbar_f[1] = std::abs(lhs_f2 - I * e2u * 0.25 * c.C1 * c.gamma2);

    out.max_residual = 0;
    for (int j = 0; j < 2; ++j)
        out.max_residual = std::max({out.max_residual, out.dzC[j], out.dzbar_gamma[j],
                                     out.dz_gamma[j], out.dzbar_f[j]});
    return out;
}

namespace {

struct Eig2 {
    double lmax, lmin;
    Eigen::Vector2d vmax, vmin;
};

Eig2 eigen_sym2(const Mat2& m) {
    const double a = m(0, 0), b = 0.5 * (m(0, 1) + m(1, 0)), cc = m(1, 1);
    const double tr = a + cc;
    const double disc = std::sqrt(std::max(0.0, (a - cc) * (a - cc) + 4 * b * b));
    Eig2 e;
    e.lmax = 0.5 * (tr + disc);
    e.lmin = 0.5 * (tr - disc);
    if (std::abs(b) < 1e-15) {
        if (a >= cc) {
            e.vmax = {1, 0};
            e.vmin = {0, 1};
        } else {
            e.vmax = {0, 1};
            e.vmin = {1, 0};
        }
        return e;
    }
    Eigen::Vector2d v1(b, e.lmax - a), v2(b, e.lmin - a);
    if (std::abs(e.lmax - a) < std::abs(e.lmax - cc)) v1 = {e.lmax - cc, b};
    if (std::abs(e.lmin - a) < std::abs(e.lmin - cc)) v2 = {e.lmin - cc, b};
    e.vmax = v1.normalized();
    e.vmin = v2.normalized();
    return e;
}

// h(X,Y) for ambient tangent vectors X, Y of Sigma, via their chart
// coefficients.
struct HExpander {
    FirstFundamental g;
    SecondFundamental h;
    Vec6 px, py;
    Eigen::Vector2d coeffs(const Vec6& X) const {
        const double c1 = minkowski_inner(X, px), c2 = minkowski_inner(X, py);
        const double det = g.det();
        return {(g.G * c1 - g.F * c2) / det, (g.E * c2 - g.F * c1) / det};
    }
    Vec6 operator()(const Vec6& X, const Vec6& Y) const {
        const auto a = coeffs(X), b = coeffs(Y);
        return a[0] * b[0] * h.hxx + (a[0] * b[1] + a[1] * b[0]) * h.hxy + a[1] * b[1] * h.hyy;
    }
};

AdaptedFrame adapted_frame_impl(const ImmersionJet& jet, const AdaptedFrame* align) {
    const FirstFundamental g = first_fundamental(jet);
    const TangentFrame fr = tangent_frame(jet);
    const NormalFrame nf = normal_frame(jet);

    Mat2 fmat;
    const Vec6 Fe1 = product_structure_F(fr.e1), Fe2 = product_structure_F(fr.e2);
    fmat << minkowski_inner(Fe1, fr.e1), minkowski_inner(Fe1, fr.e2),
        minkowski_inner(Fe2, fr.e1), minkowski_inner(Fe2, fr.e2);
    Mat2 fperp;
    const Vec6 Fn1 = product_structure_F(nf.n1), Fn2 = product_structure_F(nf.n2);
    fperp << minkowski_inner(Fn1, nf.n1), minkowski_inner(Fn1, nf.n2),
        minkowski_inner(Fn2, nf.n1), minkowski_inner(Fn2, nf.n2);

    const Eig2 et = eigen_sym2(fmat);
    if (et.lmax - et.lmin < 1e-6)
        throw std::invalid_argument("adapted_frame: pseudo-umbilical point (cos a = cos b)");
    const Eig2 en = eigen_sym2(fperp);

    AdaptedFrame out;
    out.X1 = et.vmax[0] * fr.e1 + et.vmax[1] * fr.e2;
    out.X2 = et.vmin[0] * fr.e1 + et.vmin[1] * fr.e2;
    const double cosA = et.lmax, cosB = et.lmin;

    // pair xi_i with the f_perp eigenvalue opposite to X_i's
    Eigen::Vector2d w1, w2;
    if (std::abs(en.lmax + cosA) < std::abs(en.lmin + cosA)) {
        w1 = en.vmax;
        w2 = en.vmin;
    } else {
        w1 = en.vmin;
        w2 = en.vmax;
    }
    out.xi1 = w1[0] * nf.n1 + w1[1] * nf.n2;
    out.xi2 = w2[0] * nf.n1 + w2[1] * nf.n2;

    if (align) {
        // gauge continuity across a finite-difference stencil
        if (minkowski_inner(out.X1, align->X1) < 0) out.X1 = -out.X1;
        if (minkowski_inner(out.X2, align->X2) < 0) out.X2 = -out.X2;
        if (minkowski_inner(out.xi1, align->xi1) < 0) out.xi1 = -out.xi1;
        if (minkowski_inner(out.xi2, align->xi2) < 0) out.xi2 = -out.xi2;
    } else {
        if (minkowski_inner(product_structure_F(out.X1), out.xi1) < 0) out.xi1 = -out.xi1;
        if (minkowski_inner(product_structure_F(out.X2), out.xi2) < 0) out.xi2 = -out.xi2;
    }

    const double sinA = minkowski_inner(product_structure_F(out.X1), out.xi1);
    const double sinB = minkowski_inner(product_structure_F(out.X2), out.xi2);
    out.alpha = std::atan2(sinA, cosA);
    out.beta = std::atan2(sinB, cosB);

    const auto [H, H2] = mean_curvature(jet);
    if (H2 <= 0) throw std::invalid_argument("adapted_frame: H = 0");
    out.H_norm = std::sqrt(H2);
    const Vec6 eta = H / out.H_norm;
    out.gamma = std::atan2(minkowski_inner(eta, out.xi2), minkowski_inner(eta, out.xi1));

    HExpander hx{g, second_fundamental(jet), jet.px, jet.py};
    const Vec6 Htilde = out.H_norm * (-std::sin(out.gamma) * out.xi1 + std::cos(out.gamma) * out.xi2);
    const double At11 = minkowski_inner(hx(out.X1, out.X1), Htilde);
    const double At22 = minkowski_inner(hx(out.X2, out.X2), Htilde);
    const double At12 = minkowski_inner(hx(out.X1, out.X2), Htilde);
    const double cd = cosA - cosB;
    out.nu = 8.0 * At11 / cd;

    // residuals against the structural matrices
    {
        const Vec6 basis[4] = {out.X1, out.X2, out.xi1, out.xi2};
        Eigen::Matrix4d Fm, target;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                Fm(i, j) = minkowski_inner(product_structure_F(basis[i]), basis[j]);
        target << cosA, 0, sinA, 0, 0, cosB, 0, sinB, sinA, 0, -cosA, 0, 0, sinB, 0, -cosB;
        out.fmatrix_residual = (Fm - target).cwiseAbs().maxCoeff();

        const double A11 = minkowski_inner(hx(out.X1, out.X1), H);
        const double A22 = minkowski_inner(hx(out.X2, out.X2), H);
        const double A12 = minkowski_inner(hx(out.X1, out.X2), H);
        out.matrixAH_residual = std::max({std::abs(A11 - (H2 - cd / 8.0)),
                                          std::abs(A22 - (H2 + cd / 8.0)), std::abs(A12)});
        out.matrixHtilde_residual =
            std::max(std::abs(At22 + out.nu * cd / 8.0), std::abs(At12));
    }
    return out;
}

} // namespace

AdaptedFrame adapted_frame(const ImmersionJet& jet) { return adapted_frame_impl(jet, nullptr); }

AdaptedPdeResiduals adapted_pde_residuals(const Surface& surf, double x, double y, double fd_step,
                                          double nucomp_tol) {
    const ImmersionJet cj = surf.jet(x, y, 2);
    const AdaptedFrame c = adapted_frame_impl(cj, nullptr);
    const FirstFundamental g = first_fundamental(cj);
    HExpander hx{g, second_fundamental(cj), cj.px, cj.py};

    // chart coefficients of the frame directions
    auto chart_dir = [&](const Vec6& X) {
        const double c1 = minkowski_inner(X, cj.px), c2 = minkowski_inner(X, cj.py);
        const double det = g.det();
        return Eigen::Vector2d((g.G * c1 - g.F * c2) / det, (g.E * c2 - g.F * c1) / det);
    };
    const Eigen::Vector2d d1 = chart_dir(c.X1), d2 = chart_dir(c.X2);

    const ChartRect& r = surf.domain();
    auto inside = [&](double ax, double ay) {
        return ax >= r.x0 && ax <= r.x1 && ay >= r.y0 && ay <= r.y1;
    };
    for (const auto& d : {d1, d2})
        if (!inside(x + fd_step * d[0], y + fd_step * d[1]) ||
            !inside(x - fd_step * d[0], y - fd_step * d[1]))
            throw std::domain_error("adapted_pde_residuals: stencil leaves the chart");

    struct Probe {
        AdaptedFrame f;
        double alpha_branch, beta_branch, gamma_branch;
    };
    auto probe = [&](double ax, double ay) {
        const AdaptedFrame f = adapted_frame_impl(surf.jet(ax, ay, 2), &c);
        Probe p{f, f.alpha, f.beta, f.gamma};
        // keep angle fields on the branch nearest the center
        p.alpha_branch = f.alpha - 2 * M_PI * std::round((f.alpha - c.alpha) / (2 * M_PI));
        p.beta_branch = f.beta - 2 * M_PI * std::round((f.beta - c.beta) / (2 * M_PI));
        p.gamma_branch = f.gamma - 2 * M_PI * std::round((f.gamma - c.gamma) / (2 * M_PI));
        return p;
    };

    const Probe p1p = probe(x + fd_step * d1[0], y + fd_step * d1[1]);
    const Probe p1m = probe(x - fd_step * d1[0], y - fd_step * d1[1]);
    const Probe p2p = probe(x + fd_step * d2[0], y + fd_step * d2[1]);
    const Probe p2m = probe(x - fd_step * d2[0], y - fd_step * d2[1]);

    auto D1 = [&](auto field) { return (field(p1p) - field(p1m)) / (2 * fd_step); };
    auto D2 = [&](auto field) { return (field(p2p) - field(p2m)) / (2 * fd_step); };

    const double cd = std::cos(c.alpha) - std::cos(c.beta);
    const double sinA = std::sin(c.alpha), sinB = std::sin(c.beta);
    const double Hn = c.H_norm;
    const double h11_xi1 = minkowski_inner(hx(c.X1, c.X1), c.xi1);
    const double h11_xi2 = minkowski_inner(hx(c.X1, c.X1), c.xi2);
    const double h22_xi1 = minkowski_inner(hx(c.X2, c.X2), c.xi1);
    const double h22_xi2 = minkowski_inner(hx(c.X2, c.X2), c.xi2);

    AdaptedPdeResiduals out;
    out.xalpha[0] = std::abs(D1([](const Probe& p) { return p.alpha_branch; }) + 2 * h11_xi1);
    out.xalpha[1] = std::abs(D2([](const Probe& p) { return p.alpha_branch; }));
    out.xbeta[0] = std::abs(D1([](const Probe& p) { return p.beta_branch; }));
    out.xbeta[1] = std::abs(D2([](const Probe& p) { return p.beta_branch; }) + 2 * h22_xi2);

    // connection coefficients by differentiating the X1 field
    const Vec6 dX1_1 = (p1p.f.X1 - p1m.f.X1) / (2 * fd_step);
    const Vec6 dX1_2 = (p2p.f.X1 - p2m.f.X1) / (2 * fd_step);
    out.nabla[0] =
        std::abs(minkowski_inner(dX1_1, c.X2) - sinB / cd * h11_xi2);
    out.nabla[1] =
        std::abs(minkowski_inner(dX1_2, c.X2) - sinA / cd * h22_xi1);

    out.xgamma[0] = std::abs(D1([](const Probe& p) { return p.gamma_branch; }) + sinA / cd * h11_xi2);
    out.xgamma[1] = std::abs(D2([](const Probe& p) { return p.gamma_branch; }) + sinB / cd * h22_xi1);

    const double sing = std::sin(c.gamma), cosg = std::cos(c.gamma);
    out.xnu[0] = std::abs(D1([](const Probe& p) { return p.f.nu; }) -
                          4 * Hn * sinA * (sing - c.nu * cosg) / cd);
    out.xnu[1] = std::abs(D2([](const Probe& p) { return p.f.nu; }) -
                          4 * Hn * sinB * (cosg + c.nu * sing) / cd);

    const double corr1 = (cosg + c.nu * sing) * cd / (8 * Hn);
    const double corr2 = (sing - c.nu * cosg) * cd / (8 * Hn);
    out.hXiXi[0] = std::abs(h11_xi1 - (Hn * cosg - corr1));
    out.hXiXi[1] = std::abs(h11_xi2 - (Hn * sing - corr2));
    out.hXiXi[2] = std::abs(h22_xi1 - (Hn * cosg + corr1));
    out.hXiXi[3] = std::abs(h22_xi2 - (Hn * sing + corr2));

    out.sin_alpha = std::abs(sinA);
    out.sin_beta = std::abs(sinB);
    out.nucomp_iii = std::abs(8 * Hn * Hn + cd * ((1 - c.nu * c.nu) * std::cos(2 * c.gamma) +
                                                  2 * c.nu * std::sin(2 * c.gamma)));
    const double iii_scale = 1.0 + 8 * Hn * Hn + std::abs(cd);
    if (out.sin_alpha < nucomp_tol)
        out.nucomp_disjunct = 1;
    else if (out.sin_beta < nucomp_tol)
        out.nucomp_disjunct = 2;
    else if (out.nucomp_iii < nucomp_tol * iii_scale)
        out.nucomp_disjunct = 3;
    else
        out.nucomp_disjunct = 0;

    out.max_fd_residual = 0;
    for (double v : {out.xalpha[0], out.xalpha[1], out.xbeta[0], out.xbeta[1], out.nabla[0],
                     out.nabla[1], out.xgamma[0], out.xgamma[1], out.xnu[0], out.xnu[1]})
        out.max_fd_residual = std::max(out.max_fd_residual, v);
    out.max_identity_residual = std::max({out.hXiXi[0], out.hXiXi[1], out.hXiXi[2], out.hXiXi[3]});
    return out;
}

} // namespace s2h2
