#include "s2h2/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace s2h2 {

const char* family_name(Family f) {
    switch (f) {
        case Family::curve_product: return "curve_product";
        case Family::special_1: return "special_1";
        case Family::special_2: return "special_2";
        case Family::lift_S2xR: return "lift_S2xR";
        case Family::lift_H2xR: return "lift_H2xR";
        case Family::perturbed_curve_product: return "perturbed_curve_product";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    for (Family f : {Family::curve_product, Family::special_1, Family::special_2,
                     Family::lift_S2xR, Family::lift_H2xR, Family::perturbed_curve_product})
        if (name == family_name(f)) return f;
    throw std::invalid_argument("unknown surface family: " + name);
}

const Vec6& ImmersionJet::d(int i, int j) const {
    if (i + j == 0) return p;
    if (i == 1 && j == 0) return px;
    if (i == 0 && j == 1) return py;
    if (i == 2 && j == 0) return pxx;
    if (i == 1 && j == 1) return pxy;
    if (i == 0 && j == 2) return pyy;
    if (order < 3) throw std::out_of_range("ImmersionJet: third order not available");
    if (i == 3 && j == 0) return pxxx;
    if (i == 2 && j == 1) return pxxy;
    if (i == 1 && j == 2) return pxyy;
    if (i == 0 && j == 3) return pyyy;
    throw std::out_of_range("ImmersionJet: derivative order above 3");
}

namespace {

// Partials d[i][j] = d^i/dx^i d^j/dy^j of one factor map, through order 3.
struct FactorJets {
    Vec3 d[4][4];
    FactorJets() {
        for (auto& row : d)
            for (auto& v : row) v.setZero();
    }
};

void add_separable(FactorJets& F, int comp, const Jet1& u, const Jet1& v) {
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j) F.d[i][j][comp] += u.deriv(i) * v.deriv(j);
}

FactorJets from_curve_x(const CurveSample& c) {
    FactorJets F;
    F.d[0][0] = c.pos;
    F.d[1][0] = c.d1;
    F.d[2][0] = c.d2;
    F.d[3][0] = c.d3;
    return F;
}

FactorJets from_curve_y(const CurveSample& c) {
    FactorJets F;
    F.d[0][0] = c.pos;
    F.d[0][1] = c.d1;
    F.d[0][2] = c.d2;
    F.d[0][3] = c.d3;
    return F;
}

void assemble(double x, double y, int order, const FactorJets& S, const FactorJets& H,
              ImmersionJet& out) {
    out.x = x;
    out.y = y;
    out.order = std::clamp(order, 2, 3);
    out.finite_difference = false;
    auto at = [&](int i, int j) { return join(S.d[i][j], H.d[i][j]); };
    out.p = at(0, 0);
    out.px = at(1, 0);
    out.py = at(0, 1);
    out.pxx = at(2, 0);
    out.pxy = at(1, 1);
    out.pyy = at(0, 2);
    out.pxxx = at(3, 0);
    out.pxxy = at(2, 1);
    out.pxyy = at(1, 2);
    out.pyyy = at(0, 3);
}

ChartRect clamp_chart(const std::optional<ChartRect>& wanted, const ChartRect& valid) {
    if (!wanted) return valid;
    ChartRect r = *wanted;
    r.x0 = std::max(r.x0, valid.x0);
    r.x1 = std::min(r.x1, valid.x1);
    r.y0 = std::max(r.y0, valid.y0);
    r.y1 = std::min(r.y1, valid.y1);
    if (r.x0 >= r.x1 || r.y0 >= r.y1)
        throw std::invalid_argument("requested chart does not intersect the valid domain");
    return r;
}

void require_inside(const ChartRect& r, double x, double y) {
    const double tol = 1e-9;
    if (x < r.x0 - tol || x > r.x1 + tol || y < r.y0 - tol || y > r.y1 + tol)
        throw std::domain_error("chart point outside the surface domain");
}

// --- special-surface profile plumbing ---------------------------------------

std::function<Jet1(double)> speed_from_profile(std::shared_ptr<ProfileSolution> hsol) {
    const double b = hsol->b, c = hsol->c;
    return [hsol, b, c](double x) {
        const Jet1 h = hsol->jet(x);
        return jet_sqrt(b * ((h - c) * (h - c) + 1.0));
    };
}

std::function<Jet1(double)> curvature_from_profile(std::shared_ptr<ProfileSolution> hsol) {
    const double a = hsol->a, b = hsol->b, c = hsol->c;
    const bool s1 = hsol->variant == ProfileVariant::S1;
    return [hsol, a, b, c, s1](double x) {
        const Jet1 h = hsol->jet(x);
        const Jet1 v = jet_sqrt(b * ((h - c) * (h - c) + 1.0));
        const Jet1 Q = s1 ? (Jet1::constant(a) - h * h) : (h * h - a);
        return (-b) * Q * jet_inv(v * v * v);
    };
}

// --- rotational profile helpers ----------------------------------------------

double sn_eps(int eps, double th) { return eps > 0 ? std::sin(th) : std::sinh(th); }
double ct_eps(int eps, double th) {
    return eps > 0 ? std::cos(th) / std::sin(th) : std::cosh(th) / std::sinh(th);
}

double hermite_val(double p0, double m0, double p1, double m1, double t) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * p1 +
           (t3 - t2) * m1;
}
double hermite_der(double p0, double m0, double p1, double m1, double t) {
    const double t2 = t * t;
    return (6 * t2 - 6 * t) * p0 + (3 * t2 - 4 * t + 1) * m0 + (-6 * t2 + 6 * t) * p1 +
           (3 * t2 - 2 * t) * m1;
}

struct ProfileState {
    Jet1 theta_w, t_w; // jets with respect to the chart coordinate w
};

// Invert w -> s with Newton on the Hermite interpolant, then rebuild
// (theta, t) jets in w from the ODE right-hand side via the chain rule
// ds/dw = sn_eps(theta).
ProfileState profile_at_w(const RotationalProfile& pr, double w) {
    const auto& S = pr.samples;
    if (w < S.front().w - 1e-9 || w > S.back().w + 1e-9)
        throw std::domain_error("rotational profile: w outside the integrated range");
    w = std::clamp(w, S.front().w, S.back().w);

    size_t lo = 0, hi = S.size() - 1;
    while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        (S[mid].w <= w ? lo : hi) = mid;
    }
    const auto& A = S[lo];
    const auto& B = S[lo + 1];
    const double ds = B.s - A.s;
    const double mwA = 1.0 / sn_eps(pr.eps, A.theta), mwB = 1.0 / sn_eps(pr.eps, B.theta);

    double t = (w - A.w) / (B.w - A.w);
    for (int it = 0; it < 4; ++it) {
        const double f = hermite_val(A.w, ds * mwA, B.w, ds * mwB, t) - w;
        const double df = hermite_der(A.w, ds * mwA, B.w, ds * mwB, t);
        t -= f / df;
    }
    t = std::clamp(t, 0.0, 1.0);

    const double sAraw = A.sigma, sBraw = B.sigma;
    auto rhs_sigma = [&](double th, double sg) { return 2 * pr.H - ct_eps(pr.eps, th) * std::sin(sg); };
    const double th = hermite_val(A.theta, ds * std::cos(sAraw), B.theta, ds * std::cos(sBraw), t);
    const double tt = hermite_val(A.t, ds * std::sin(sAraw), B.t, ds * std::sin(sBraw), t);
    const double sg = hermite_val(A.sigma, ds * rhs_sigma(A.theta, sAraw), B.sigma,
                                  ds * rhs_sigma(B.theta, sBraw), t);

    // s-jets from the ODE; d(cot)/dth = -1/sin^2 and d(coth)/dth = -1/sinh^2
    const double sn = sn_eps(pr.eps, th);
    const double cs = pr.eps > 0 ? std::cos(th) : std::cosh(th);
    const double ct = cs / sn;
    const double dct = -1.0 / (sn * sn);

    const double sig1 = 2 * pr.H - ct * std::sin(sg);
    const double th1 = std::cos(sg);
    const double t1 = std::sin(sg);
    const double th2 = -std::sin(sg) * sig1;
    const double t2 = std::cos(sg) * sig1;
    const double sig2 = -dct * th1 * std::sin(sg) - ct * std::cos(sg) * sig1;
    const double th3 = -std::cos(sg) * sig1 * sig1 - std::sin(sg) * sig2;
    const double t3 = -std::sin(sg) * sig1 * sig1 + std::cos(sg) * sig2;

    const Jet1 theta_s{th, th1, th2, th3};
    const Jet1 t_s{tt, t1, t2, t3};

    // m = sn_eps(theta) as an s-jet, then s(w) jets
    const Jet1 m = pr.eps > 0 ? jet_sin(theta_s) : jet_sinh(theta_s);
    const Jet1 s_w{0, m.f, m.d1 * m.f, (m.d2 * m.f + m.d1 * m.d1) * m.f};

    return {compose(theta_s, s_w), compose(t_s, s_w)};
}

} // namespace

RotationalProfile rotational_cmc_profile(int eps, double H, double step) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("rotational profile: eps is +1 or -1");
    if (H <= 0) throw std::invalid_argument("rotational profile: H must be positive");
    if (eps == -1 && H <= 0.5)
        throw std::invalid_argument("rotational profile in H^2 x R needs H > 1/2");
    if (step <= 0) throw std::invalid_argument("rotational profile: step must be positive");

    RotationalProfile pr;
    pr.eps = eps;
    pr.H = H;
    pr.step = step;

    const double theta0 = 1e-4;
    const double half = eps > 0 ? std::tan(0.5 * theta0) : std::tanh(0.5 * theta0);
    double th = theta0;
    double t = 0;
    double sg = std::asin(std::min(1.0, 2 * H * half)); // axis-regular start
    double w = 0;

    auto rhs = [&](double a_th, double a_sg, double& dth, double& dt, double& dsg, double& dw) {
        dth = std::cos(a_sg);
        dt = std::sin(a_sg);
        dsg = 2 * H - ct_eps(eps, a_th) * std::sin(a_sg);
        dw = 1.0 / sn_eps(eps, a_th);
    };

    double s = 0;
    pr.samples.push_back({s, th, t, sg, w});
    const double s_cap = 50.0;
    while (s < s_cap) {
        double k1[4], k2[4], k3[4], k4[4];
        rhs(th, sg, k1[0], k1[1], k1[2], k1[3]);
        rhs(th + 0.5 * step * k1[0], sg + 0.5 * step * k1[2], k2[0], k2[1], k2[2], k2[3]);
        rhs(th + 0.5 * step * k2[0], sg + 0.5 * step * k2[2], k3[0], k3[1], k3[2], k3[3]);
        rhs(th + step * k3[0], sg + step * k3[2], k4[0], k4[1], k4[2], k4[3]);
        const double thn = th + (step / 6) * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
        const double tn = t + (step / 6) * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
        const double sgn = sg + (step / 6) * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
        const double wn = w + (step / 6) * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3]);
        if (thn <= theta0 || sgn >= M_PI - 1e-3) break; // profile closes at the opposite pole
        th = thn;
        t = tn;
        sg = sgn;
        w = wn;
        s += step;
        pr.samples.push_back({s, th, t, sg, w});
    }
    if (pr.samples.size() < 100)
        throw std::invalid_argument("rotational profile: pole-start failed to develop");
    return pr;
}

ChartRect Surface::interior(double margin_fraction) const {
    ChartRect r = domain_;
    const double mx = (r.x1 - r.x0) * margin_fraction;
    const double my = (r.y1 - r.y0) * margin_fraction;
    return {r.x0 + mx, r.x1 - mx, r.y0 + my, r.y1 - my};
}

ImmersionJet Surface::jet(double x, double y, int order) const {
    require_inside(domain_, x, y);
    ImmersionJet out;
    eval_(x, y, order, out);
    return out;
}

ImmersionJet Surface::fd_jet(double x, double y, double step) const {
    auto pos = [&](double ax, double ay) {
        ImmersionJet j;
        eval_(ax, ay, 2, j);
        return j.p;
    };
    ImmersionJet out;
    out.x = x;
    out.y = y;
    out.order = 2;
    out.finite_difference = true;
    const double d = step;
    const Vec6 c = pos(x, y);
    const Vec6 xp = pos(x + d, y), xm = pos(x - d, y);
    const Vec6 yp = pos(x, y + d), ym = pos(x, y - d);
    out.p = c;
    out.px = (xp - xm) / (2 * d);
    out.py = (yp - ym) / (2 * d);
    out.pxx = (xp - 2 * c + xm) / (d * d);
    out.pyy = (yp - 2 * c + ym) / (d * d);
    out.pxy = (pos(x + d, y + d) - pos(x + d, y - d) - pos(x - d, y + d) + pos(x - d, y - d)) /
              (4 * d * d);
    return out;
}

bool Surface::expect_vanishing_theta() const {
    return expected_theta_ && std::abs(*expected_theta_) < 1e-12;
}

namespace {

void build_curve_product_eval(Surface& s, const CurveModel& A, const CurveModel& B,
                              std::function<void(double, double, int, ImmersionJet&)>& eval) {
    (void)s;
    eval = [A, B](double x, double y, int order, ImmersionJet& out) {
        assemble(x, y, order, from_curve_x(A.jet(x)), from_curve_y(B.jet(y)), out);
    };
}

} // namespace

Surface build_lift(Family factor, const CMCGenerator& generator, double geodesic_angle,
                   bool allow_minimal, const BuildOptions& opts) {
    if (factor != Family::lift_S2xR && factor != Family::lift_H2xR)
        throw std::invalid_argument("build_lift: factor must be lift_S2xR or lift_H2xR");
    const bool sphere_factor = factor == Family::lift_S2xR;

    Surface s;
    s.spec_.family = factor;
    LiftParams lp;
    lp.geodesic_angle = geodesic_angle;
    lp.allow_minimal = allow_minimal;

    if (const auto* cyl = std::get_if<CylinderDesc>(&generator)) {
        if (cyl->k == 0 && !allow_minimal)
            throw std::invalid_argument("build_lift: minimal cylinder generator rejected");
        lp.generator = *cyl;
        s.spec_.params = lp;
        // A vertical cylinder lifts to a product of a constant-curvature
        // curve and a geodesic of the opposite factor; keep the sphere factor
        // on the x chart direction so the Hopf formula matches the product
        // chart convention.
        CurveModel A = sphere_factor ? CurveModel::closed_form(Factor::sphere, cyl->k)
                                     : CurveModel::geodesic(Factor::sphere, geodesic_angle);
        CurveModel B = sphere_factor ? CurveModel::geodesic(Factor::hyperbolic, geodesic_angle)
                                     : CurveModel::closed_form(Factor::hyperbolic, cyl->k);
        const double ka = sphere_factor ? cyl->k : 0.0;
        const double kb = sphere_factor ? 0.0 : cyl->k;
        s.expected_Hnorm2_ = 0.25 * (ka * ka + kb * kb);
        s.expected_theta_ = 0.5 * (ka * ka - kb * kb) + 0.5;
        s.domain_ = clamp_chart(s.spec_.chart, {-2, 2, -2, 2});
        build_curve_product_eval(s, A, B, s.eval_);
        return s;
    }

    const auto& pr = std::get<RotationalProfile>(generator);
    if ((pr.eps > 0) != sphere_factor)
        throw std::invalid_argument("build_lift: generator lives in the other product factor");
    lp.generator = RotationalDesc{pr.H};
    s.spec_.params = lp;
    s.expected_Hnorm2_ = pr.H * pr.H;
    s.expected_theta_ = 0.0; // Abresch-Rosenberg differential vanishes on rotational spheres

    // Usable w-range: keep clear of the poles where the Mercator chart
    // degenerates.
    double theta_max = 0;
    for (const auto& q : pr.samples) theta_max = std::max(theta_max, q.theta);
    double w_lo = pr.samples.front().w, w_hi = pr.samples.back().w;
    for (const auto& q : pr.samples)
        if (q.theta >= 0.3 * theta_max) {
            w_lo = q.w;
            break;
        }
    for (auto it = pr.samples.rbegin(); it != pr.samples.rend(); ++it)
        if (it->theta >= 0.3 * theta_max) {
            w_hi = it->w;
            break;
        }
    s.domain_ = {w_lo, w_hi, -M_PI, M_PI};

    auto profile = std::make_shared<RotationalProfile>(pr);
    const double chi = geodesic_angle;
    const bool sf = sphere_factor;
    s.eval_ = [profile, chi, sf](double x, double y, int order, ImmersionJet& out) {
        const ProfileState ps = profile_at_w(*profile, x);
        const Jet1 yj = Jet1::variable(y);
        const Jet1 cphi = jet_cos(yj), sphi = jet_sin(yj);
        FactorJets rot, geo;
        if (sf) {
            // rotational sphere piece in S^2: (sin th cos phi, sin th sin phi, cos th)
            const Jet1 snth = jet_sin(ps.theta_w), csth = jet_cos(ps.theta_w);
            add_separable(rot, 0, snth, cphi);
            add_separable(rot, 1, snth, sphi);
            add_separable(rot, 2, csth, Jet1::constant(1));
            // geodesic of H^2 at arc length t
            const Jet1 ch = jet_cosh(ps.t_w), sh = jet_sinh(ps.t_w);
            add_separable(geo, 0, std::cos(chi) * sh, Jet1::constant(1));
            add_separable(geo, 1, std::sin(chi) * sh, Jet1::constant(1));
            add_separable(geo, 2, ch, Jet1::constant(1));
            assemble(x, y, order, rot, geo, out);
        } else {
            // rotational piece in H^2: (sinh th cos phi, sinh th sin phi, cosh th)
            const Jet1 shth = jet_sinh(ps.theta_w), chth = jet_cosh(ps.theta_w);
            add_separable(rot, 0, shth, cphi);
            add_separable(rot, 1, shth, sphi);
            add_separable(rot, 2, chth, Jet1::constant(1));
            // geodesic of S^2 at arc length t
            const Jet1 cg = jet_cos(ps.t_w), sg = jet_sin(ps.t_w);
            add_separable(geo, 0, cg, Jet1::constant(1));
            add_separable(geo, 1, std::cos(chi) * sg, Jet1::constant(1));
            add_separable(geo, 2, std::sin(chi) * sg, Jet1::constant(1));
            assemble(x, y, order, geo, rot, out);
        }
    };
    return s;
}

Surface build_surface(const SurfaceSpec& spec, const BuildOptions& opts) {
    Surface s;
    s.spec_ = spec;

    switch (spec.family) {
        case Family::curve_product: {
            const auto& p = std::get<CurveProductParams>(spec.params);
            if (p.k_alpha == 0 && p.k_beta == 0 && !p.allow_minimal)
                throw std::invalid_argument(
                    "curve product of two geodesics is minimal, not PMC (set allow_minimal)");
            if (p.k_beta < 0)
                throw std::invalid_argument("curve product: hyperbolic curvature must be >= 0");
            CurveModel A = CurveModel::closed_form(Factor::sphere, p.k_alpha);
            CurveModel B = CurveModel::closed_form(Factor::hyperbolic, p.k_beta);
            s.expected_Hnorm2_ = 0.25 * (p.k_alpha * p.k_alpha + p.k_beta * p.k_beta);
            s.expected_theta_ = 0.5 * (p.k_alpha * p.k_alpha - p.k_beta * p.k_beta) + 0.5;
            s.domain_ = clamp_chart(spec.chart, {-2, 2, -2, 2});
            build_curve_product_eval(s, A, B, s.eval_);
            return s;
        }

        case Family::perturbed_curve_product: {
            const auto& p = std::get<PerturbedParams>(spec.params);
            const double amp = p.amplitude;
            const double ka = p.k_alpha;
            PrescribedCurveProblem prob;
            prob.factor = Factor::sphere;
            prob.speed = [](double) { return Jet1::constant(1.0); };
            prob.signed_curvature = [ka, amp](double t) {
                return Jet1::constant(ka) + amp * jet_sin(Jet1::variable(t));
            };
            prob.start_pos = Vec3(1, 0, 0);
            prob.start_dir = Vec3(0, 1, 0);
            prob.x0 = 0;
            prob.x1 = 3;
            prob.step = opts.ode_step;
            CurveModel A = CurveModel::integrated(prob);
            CurveModel B = CurveModel::closed_form(Factor::hyperbolic, p.k_beta);
            s.domain_ = clamp_chart(spec.chart, {0, 3, -2, 2});
            build_curve_product_eval(s, A, B, s.eval_);
            return s;
        }

        case Family::special_1: {
            const auto& p = std::get<SpecialParams>(spec.params);
            auto hsol = std::make_shared<ProfileSolution>(integrate_h(
                p.a, p.b, p.c, ProfileVariant::S1, p.h0, p.slope_sign, opts.x_max, opts.ode_step));
            PrescribedCurveProblem prob;
            prob.factor = Factor::hyperbolic;
            prob.speed = speed_from_profile(hsol);
            prob.signed_curvature = curvature_from_profile(hsol);
            prob.start_pos = Vec3(0, 0, 1);
            prob.start_dir = Vec3(1, 0, 0);
            prob.x0 = 0;
            prob.x1 = hsol->x_end;
            prob.step = opts.ode_step;
            CurveModel psi = CurveModel::integrated(prob);

            s.expected_Hnorm2_ = 0.25 * p.b;
            s.expected_theta_ = 0.5 * p.b * (p.a - 1.0 - p.c * p.c);
            s.domain_ = clamp_chart(spec.chart, {0, hsol->x_end, -2, 2});

            const double a = p.a;
            const double sqrt_a = std::sqrt(a);
            s.eval_ = [hsol, psi, a, sqrt_a](double x, double y, int order, ImmersionJet& out) {
                const Jet1 h = hsol->jet(x);
                const Jet1 r = jet_sqrt(Jet1::constant(a) - h * h) / sqrt_a;
                const Jet1 wy{sqrt_a * y, sqrt_a, 0, 0};
                const Jet1 cy = jet_cos(wy), sy = jet_sin(wy);
                FactorJets sphere;
                add_separable(sphere, 0, r, cy);
                add_separable(sphere, 1, r, sy);
                add_separable(sphere, 2, h / sqrt_a, Jet1::constant(1));
                assemble(x, y, order, sphere, from_curve_x(psi.jet(x)), out);
            };
            return s;
        }

        case Family::special_2: {
            const auto& p = std::get<SpecialParams>(spec.params);
            if (p.a >= 0 && p.h0 <= 0)
                throw std::invalid_argument(
                    "special_2 with a >= 0 needs h0 > 0 (upper hyperboloid sheet)");
            auto hsol = std::make_shared<ProfileSolution>(integrate_h(
                p.a, p.b, p.c, ProfileVariant::S2, p.h0, p.slope_sign, opts.x_max, opts.ode_step));
            if (p.a == 0) {
                // the a = 0 chart formula degenerates as h -> 0
                size_t keep = hsol->samples.size();
                for (size_t i = 0; i < hsol->samples.size(); ++i)
                    if (std::abs(hsol->samples[i].h) < 1e-3) {
                        keep = i;
                        break;
                    }
                if (keep < 2)
                    throw std::invalid_argument("special_2 with a = 0: h starts too close to 0");
                hsol->samples.resize(keep);
                hsol->x_end = hsol->samples.back().x;
            }

            PrescribedCurveProblem prob;
            prob.factor = Factor::sphere;
            prob.speed = speed_from_profile(hsol);
            prob.signed_curvature = curvature_from_profile(hsol);
            prob.start_pos = Vec3(1, 0, 0);
            prob.start_dir = Vec3(0, 1, 0);
            prob.x0 = 0;
            prob.x1 = hsol->x_end;
            prob.step = opts.ode_step;
            CurveModel phi = CurveModel::integrated(prob);

            s.expected_Hnorm2_ = 0.25 * p.b;
            // In the chart (x,y) -> (phi(x), psi(x,y)) the coefficient carries
            // the opposite sign to the special_1 family; the vanishing
            // condition a = 1 + c^2 is the same.
            s.expected_theta_ = -0.5 * p.b * (p.a - 1.0 - p.c * p.c);
            s.domain_ = clamp_chart(spec.chart, {0, hsol->x_end, -2, 2});

            const double a = p.a;
            s.eval_ = [hsol, phi, a](double x, double y, int order, ImmersionJet& out) {
                const Jet1 h = hsol->jet(x);
                FactorJets hyp;
                if (a > 0) {
                    const double sqrt_a = std::sqrt(a);
                    const Jet1 r = jet_sqrt(h * h - a) / sqrt_a;
                    const Jet1 wy{sqrt_a * y, sqrt_a, 0, 0};
                    add_separable(hyp, 0, r, jet_cos(wy));
                    add_separable(hyp, 1, r, jet_sin(wy));
                    add_separable(hyp, 2, h / sqrt_a, Jet1::constant(1));
                } else if (a < 0) {
                    const double sq = std::sqrt(-a);
                    const Jet1 r = jet_sqrt(h * h - a) / sq;
                    const Jet1 wy{sq * y, sq, 0, 0};
                    add_separable(hyp, 0, h / sq, Jet1::constant(1));
                    add_separable(hyp, 1, r, jet_sinh(wy));
                    add_separable(hyp, 2, r, jet_cosh(wy));
                } else {
                    const Jet1 yj = Jet1::variable(y);
                    const Jet1 half_h = 0.5 * h;
                    const Jet1 inv2h = 0.5 * jet_inv(h);
                    add_separable(hyp, 0, half_h, yj * yj);
                    add_separable(hyp, 0, inv2h - half_h, Jet1::constant(1));
                    add_separable(hyp, 1, h, yj);
                    add_separable(hyp, 2, half_h, yj * yj);
                    add_separable(hyp, 2, inv2h + half_h, Jet1::constant(1));
                }
                assemble(x, y, order, from_curve_x(phi.jet(x)), hyp, out);
            };
            return s;
        }

        case Family::lift_S2xR:
        case Family::lift_H2xR: {
            const auto& p = std::get<LiftParams>(spec.params);
            CMCGenerator gen;
            if (const auto* cyl = std::get_if<CylinderDesc>(&p.generator)) {
                gen = *cyl;
            } else {
                const auto& rot = std::get<RotationalDesc>(p.generator);
                const int eps = spec.family == Family::lift_S2xR ? +1 : -1;
                gen = rotational_cmc_profile(eps, rot.H, opts.ode_step);
            }
            Surface out =
                build_lift(spec.family, gen, p.geodesic_angle, p.allow_minimal, opts);
            if (spec.chart) out.domain_ = clamp_chart(spec.chart, out.domain_);
            out.spec_ = spec;
            return out;
        }
    }
    throw std::invalid_argument("build_surface: unknown family");
}

SurfaceSpec make_curve_product(double k_alpha, double k_beta, bool allow_minimal) {
    return {Family::curve_product, CurveProductParams{k_alpha, k_beta, allow_minimal}, {}};
}
SurfaceSpec make_special_1(double a, double b, double c, double h0, int slope_sign) {
    return {Family::special_1, SpecialParams{a, b, c, h0, slope_sign}, {}};
}
SurfaceSpec make_special_2(double a, double b, double c, double h0, int slope_sign) {
    return {Family::special_2, SpecialParams{a, b, c, h0, slope_sign}, {}};
}
SurfaceSpec make_lift(Family factor, const GeneratorDesc& generator, double geodesic_angle,
                      bool allow_minimal) {
    if (factor != Family::lift_S2xR && factor != Family::lift_H2xR)
        throw std::invalid_argument("make_lift: factor must be lift_S2xR or lift_H2xR");
    LiftParams lp;
    lp.generator = generator;
    lp.geodesic_angle = geodesic_angle;
    lp.allow_minimal = allow_minimal;
    return {factor, lp, {}};
}
SurfaceSpec make_perturbed_curve_product(double k_alpha, double k_beta, double amplitude) {
    return {Family::perturbed_curve_product, PerturbedParams{k_alpha, k_beta, amplitude}, {}};
}

} // namespace s2h2
