#include "s2h2/curves.hpp"

#include "s2h2/ambient.hpp"

#include <algorithm>
#include <cmath>

namespace s2h2 {

namespace {

double factor_inner(Factor f, const Vec3& a, const Vec3& b) {
    return f == Factor::sphere ? a.dot(b) : lorentz_inner(a, b);
}

Vec3 factor_rot(Factor f, const Vec3& p, const Vec3& w) {
    return f == Factor::sphere ? Vec3(p.cross(w)) : lorentz_cross(p, w);
}

double membership_residual(Factor f, const Vec3& p) {
    return f == Factor::sphere ? std::abs(p.squaredNorm() - 1.0)
                               : std::abs(lorentz_inner(p, p) + 1.0);
}

Vec3 renormalize_point(Factor f, const Vec3& p) {
    if (f == Factor::sphere) return p / p.norm();
    Vec3 q = p / std::sqrt(-lorentz_inner(p, p));
    if (q[2] < 0) q = -q;
    return q;
}

Vec3 retangentialize(Factor f, const Vec3& p, const Vec3& w) {
    if (f == Factor::sphere) return w - w.dot(p) * p;
    return w + lorentz_inner(w, p) * p;
}

// c'' = (v'/v) c' + kappa v J(c') + eps <c',c'> c, the Gauss-split Frenet
// equation in factor coordinates (eps = -1 sphere, +1 hyperboloid).
Vec3 frenet_rhs(Factor f, const Jet1& v, const Jet1& kap, const Vec3& c, const Vec3& w) {
    const double eps = f == Factor::sphere ? -1.0 : 1.0;
    return (v.d1 / v.f) * w + kap.f * v.f * factor_rot(f, c, w) + eps * factor_inner(f, w, w) * c;
}

// x-derivative of the right-hand side, using d/dx (J c') = J c''.
Vec3 frenet_rhs_prime(Factor f, const Jet1& v, const Jet1& kap, const Vec3& c, const Vec3& w,
                      const Vec3& a) {
    const double eps = f == Factor::sphere ? -1.0 : 1.0;
    const double lv = v.d1 / v.f;
    const double lv_prime = v.d2 / v.f - lv * lv;
    const double kv = kap.f * v.f;
    const double kv_prime = kap.d1 * v.f + kap.f * v.d1;
    return lv_prime * w + lv * a + kv_prime * factor_rot(f, c, w) + kv * factor_rot(f, c, a) +
           eps * (2.0 * factor_inner(f, a, w) * c + factor_inner(f, w, w) * w);
}

CurveSample make_sample(Factor f, const std::function<Jet1(double)>& speed,
                        const std::function<Jet1(double)>& curv, double x, const Vec3& c,
                        const Vec3& w) {
    const Jet1 v = speed(x);
    const Jet1 k = curv(x);
    CurveSample s;
    s.x = x;
    s.pos = c;
    s.d1 = w;
    s.d2 = frenet_rhs(f, v, k, c, w);
    s.d3 = frenet_rhs_prime(f, v, k, c, w, s.d2);
    return s;
}

} // namespace

CurveSample sphere_circle(double k, double t) {
    const double rho = 1.0 / std::sqrt(1.0 + k * k); // sin(theta)
    const double ct = k / std::sqrt(1.0 + k * k);    // cos(theta)
    const Jet1 phase{t / rho, 1.0 / rho, 0, 0};
    const Jet1 cx = rho * jet_cos(phase);
    const Jet1 cy = rho * jet_sin(phase);
    CurveSample s;
    s.x = t;
    s.pos = Vec3(cx.f, cy.f, ct);
    s.d1 = Vec3(cx.d1, cy.d1, 0);
    s.d2 = Vec3(cx.d2, cy.d2, 0);
    s.d3 = Vec3(cx.d3, cy.d3, 0);
    return s;
}

CurveSample hyperbolic_constant_curvature(double k, double s) {
    if (k < 0) throw std::invalid_argument("hyperbolic curvature must be >= 0");
    CurveSample r;
    r.x = s;
    if (k == 0.0) {
        const Jet1 u = Jet1::variable(s);
        const Jet1 sh = jet_sinh(u), ch = jet_cosh(u);
        r.pos = Vec3(sh.f, 0, ch.f);
        r.d1 = Vec3(sh.d1, 0, ch.d1);
        r.d2 = Vec3(sh.d2, 0, ch.d2);
        r.d3 = Vec3(sh.d3, 0, ch.d3);
    } else if (k == 1.0) {
        // horocycle through (0,0,1)
        r.pos = Vec3(s, 0.5 * s * s, 1.0 + 0.5 * s * s);
        r.d1 = Vec3(1, s, s);
        r.d2 = Vec3(0, 1, 1);
        r.d3 = Vec3::Zero();
    } else if (k > 1.0) {
        // circle of hyperbolic radius rho with coth(rho) = k
        const double rho = 0.5 * std::log((k + 1.0) / (k - 1.0));
        const double R = std::sinh(rho);
        const Jet1 phase{s / R, 1.0 / R, 0, 0};
        const Jet1 cx = R * jet_cos(phase);
        const Jet1 cy = R * jet_sin(phase);
        r.pos = Vec3(cx.f, cy.f, std::cosh(rho));
        r.d1 = Vec3(cx.d1, cy.d1, 0);
        r.d2 = Vec3(cx.d2, cy.d2, 0);
        r.d3 = Vec3(cx.d3, cy.d3, 0);
    } else {
        // hypercycle at distance d from a geodesic, tanh(d) = k; the sign of
        // the offset makes the signed curvature +k under N = J T
        const double d = std::atanh(k);
        const double C = std::cosh(d);
        const Jet1 phase{s / C, 1.0 / C, 0, 0};
        const Jet1 cx = C * jet_sinh(phase);
        const Jet1 cz = C * jet_cosh(phase);
        r.pos = Vec3(cx.f, -std::sinh(d), cz.f);
        r.d1 = Vec3(cx.d1, 0, cz.d1);
        r.d2 = Vec3(cx.d2, 0, cz.d2);
        r.d3 = Vec3(cx.d3, 0, cz.d3);
    }
    return r;
}

std::vector<CurveSample> frenet_integrate(const PrescribedCurveProblem& prob) {
    if (prob.step <= 0) throw std::invalid_argument("frenet_integrate: step must be positive");
    if (prob.x1 <= prob.x0) throw std::invalid_argument("frenet_integrate: empty range");
    if (membership_residual(prob.factor, prob.start_pos) > kMembershipTol)
        throw std::invalid_argument("frenet_integrate: start point off the factor");
    if (std::abs(factor_inner(prob.factor, prob.start_pos, prob.start_dir)) > 1e-8)
        throw std::invalid_argument("frenet_integrate: start direction not tangent");

    const Factor f = prob.factor;
    Vec3 c = prob.start_pos;
    Vec3 dir = prob.start_dir;
    dir /= std::sqrt(factor_inner(f, dir, dir));
    Vec3 w = prob.speed(prob.x0).f * dir;

    const int n = std::max(1, static_cast<int>(std::llround((prob.x1 - prob.x0) / prob.step)));
    const double h = (prob.x1 - prob.x0) / n;

    std::vector<CurveSample> out;
    out.reserve(n + 1);

    auto rhs = [&](double x, const Vec3& cc, const Vec3& ww, Vec3& dc, Vec3& dw) {
        const Jet1 v = prob.speed(x);
        if (v.f <= 0) throw std::invalid_argument("frenet_integrate: speed must stay positive");
        dc = ww;
        dw = frenet_rhs(f, v, prob.signed_curvature(x), cc, ww);
    };

    for (int i = 0; i <= n; ++i) {
        const double x = prob.x0 + i * h;
        out.push_back(make_sample(f, prob.speed, prob.signed_curvature, x, c, w));
        if (i == n) break;

        Vec3 k1c, k1w, k2c, k2w, k3c, k3w, k4c, k4w;
        rhs(x, c, w, k1c, k1w);
        rhs(x + 0.5 * h, c + 0.5 * h * k1c, w + 0.5 * h * k1w, k2c, k2w);
        rhs(x + 0.5 * h, c + 0.5 * h * k2c, w + 0.5 * h * k2w, k3c, k3w);
        rhs(x + h, c + h * k3c, w + h * k3w, k4c, k4w);
        c += (h / 6.0) * (k1c + 2 * k2c + 2 * k3c + k4c);
        w += (h / 6.0) * (k1w + 2 * k2w + 2 * k3w + k4w);
        c = renormalize_point(f, c);
        w = retangentialize(f, c, w);
    }
    return out;
}

namespace {

// Quintic Hermite interpolation from (value, first, second) derivative data
// at both interval ends; keeps interpolated states consistent with the ODE
// right-hand side through second order.
double quintic(double f0, double m0, double a0, double f1, double m1, double a1, double t) {
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    return f0 * (1 - 10 * t3 + 15 * t4 - 6 * t5) + m0 * (t - 6 * t3 + 8 * t4 - 3 * t5) +
           a0 * (0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5) +
           f1 * (10 * t3 - 15 * t4 + 6 * t5) + m1 * (-4 * t3 + 7 * t4 - 3 * t5) +
           a1 * (0.5 * t3 - t4 + 0.5 * t5);
}

Vec3 quintic3(const Vec3& f0, const Vec3& m0, const Vec3& a0, const Vec3& f1, const Vec3& m1,
              const Vec3& a1, double t) {
    return Vec3(quintic(f0[0], m0[0], a0[0], f1[0], m1[0], a1[0], t),
                quintic(f0[1], m0[1], a0[1], f1[1], m1[1], a1[1], t),
                quintic(f0[2], m0[2], a0[2], f1[2], m1[2], a1[2], t));
}

} // namespace

CurveModel CurveModel::closed_form(Factor f, double k) {
    CurveModel m;
    m.factor_ = f;
    if (f == Factor::sphere) {
        m.eval_ = [k](double x) { return sphere_circle(k, x); };
    } else {
        m.eval_ = [k](double x) { return hyperbolic_constant_curvature(k, x); };
    }
    return m;
}

CurveModel CurveModel::geodesic(Factor f, double angle) {
    CurveModel m;
    m.factor_ = f;
    if (f == Factor::sphere) {
        const Vec3 p0(1, 0, 0);
        const Vec3 dir(0, std::cos(angle), std::sin(angle));
        m.eval_ = [p0, dir](double x) {
            const Jet1 u = Jet1::variable(x);
            const Jet1 cs = jet_cos(u), sn = jet_sin(u);
            CurveSample s;
            s.x = x;
            s.pos = cs.f * p0 + sn.f * dir;
            s.d1 = cs.d1 * p0 + sn.d1 * dir;
            s.d2 = cs.d2 * p0 + sn.d2 * dir;
            s.d3 = cs.d3 * p0 + sn.d3 * dir;
            return s;
        };
    } else {
        const Vec3 p0(0, 0, 1);
        const Vec3 dir(std::cos(angle), std::sin(angle), 0);
        m.eval_ = [p0, dir](double x) {
            const Jet1 u = Jet1::variable(x);
            const Jet1 ch = jet_cosh(u), sh = jet_sinh(u);
            CurveSample s;
            s.x = x;
            s.pos = ch.f * p0 + sh.f * dir;
            s.d1 = ch.d1 * p0 + sh.d1 * dir;
            s.d2 = ch.d2 * p0 + sh.d2 * dir;
            s.d3 = ch.d3 * p0 + sh.d3 * dir;
            return s;
        };
    }
    return m;
}

CurveModel CurveModel::integrated(const PrescribedCurveProblem& prob) {
    auto samples = std::make_shared<std::vector<CurveSample>>(frenet_integrate(prob));
    CurveModel m;
    m.factor_ = prob.factor;
    m.x_min_ = prob.x0;
    m.x_max_ = samples->back().x;
    const Factor f = prob.factor;
    const auto speed = prob.speed;
    const auto curv = prob.signed_curvature;
    m.eval_ = [samples, f, speed, curv](double x) {
        const auto& S = *samples;
        const double x0 = S.front().x, x1 = S.back().x;
        if (x < x0 - 1e-9 || x > x1 + 1e-9)
            throw std::domain_error("CurveModel: parameter outside the integrated range");
        x = std::clamp(x, x0, x1);
        const double dx = (x1 - x0) / (S.size() - 1);
        auto idx = std::min(static_cast<size_t>((x - x0) / dx), S.size() - 2);
        const auto& A = S[idx];
        const auto& B = S[idx + 1];
        const double t = (x - A.x) / dx;
        if (t < 1e-12) return make_sample(f, speed, curv, x, A.pos, A.d1);
        if (t > 1.0 - 1e-12) return make_sample(f, speed, curv, x, B.pos, B.d1);
        const double dx2 = dx * dx;
        Vec3 c = quintic3(A.pos, dx * A.d1, dx2 * A.d2, B.pos, dx * B.d1, dx2 * B.d2, t);
        Vec3 w = quintic3(A.d1, dx * A.d2, dx2 * A.d3, B.d1, dx * B.d2, dx2 * B.d3, t);
        c = renormalize_point(f, c);
        w = retangentialize(f, c, w);
        return make_sample(f, speed, curv, x, c, w);
    };
    return m;
}

CurveSample CurveModel::jet(double x) const { return eval_(x); }

} // namespace s2h2
