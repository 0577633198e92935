#include "s2h2/hode.hpp"

#include <algorithm>
#include <cmath>

namespace s2h2 {

namespace {

// P factored through Q = a - h^2 and B = b(1+(h-c)^2); sgn = -1 for S1,
// +1 for S2.
double eval_P(double a, double b, double c, double sgn, double h) {
    const double Q = a - h * h;
    const double B = b * (1.0 + (h - c) * (h - c));
    return (Q + sgn * B) * Q;
}

double eval_dP(double a, double b, double c, double sgn, double h) {
    const double Q = a - h * h;
    const double B = b * (1.0 + (h - c) * (h - c));
    const double dQ = -2.0 * h;
    const double dB = 2.0 * b * (h - c);
    return (dQ + sgn * dB) * Q + (Q + sgn * B) * dQ;
}

double eval_ddP(double a, double b, double c, double sgn, double h) {
    const double Q = a - h * h;
    const double B = b * (1.0 + (h - c) * (h - c));
    const double dQ = -2.0 * h;
    const double dB = 2.0 * b * (h - c);
    return (-2.0 + sgn * 2.0 * b) * Q + 2.0 * (dQ + sgn * dB) * dQ + (Q + sgn * B) * (-2.0);
}

// Quintic Hermite from (value, first, second) derivative data at both ends;
// the second-derivative data comes from the ODE identity.
double quintic(double f0, double m0, double a0, double f1, double m1, double a1, double t) {
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    return f0 * (1 - 10 * t3 + 15 * t4 - 6 * t5) + m0 * (t - 6 * t3 + 8 * t4 - 3 * t5) +
           a0 * (0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5) +
           f1 * (10 * t3 - 15 * t4 + 6 * t5) + m1 * (-4 * t3 + 7 * t4 - 3 * t5) +
           a1 * (0.5 * t3 - t4 + 0.5 * t5);
}

constexpr double kSlopeCap = 30.0; // keeps the energy monitor meaningful near blow-up

} // namespace

double ProfileSolution::P(double h) const {
    return eval_P(a, b, c, variant == ProfileVariant::S1 ? -1.0 : 1.0, h);
}
double ProfileSolution::dP(double h) const {
    return eval_dP(a, b, c, variant == ProfileVariant::S1 ? -1.0 : 1.0, h);
}
double ProfileSolution::ddP(double h) const {
    return eval_ddP(a, b, c, variant == ProfileVariant::S1 ? -1.0 : 1.0, h);
}

Jet1 ProfileSolution::jet(double x) const {
    const double x0 = samples.front().x, x1 = samples.back().x;
    if (x < x0 - 1e-9 || x > x1 + 1e-9)
        throw std::domain_error("ProfileSolution: x outside the achieved range");
    x = std::clamp(x, x0, x1);
    const double dx = (x1 - x0) / (samples.size() - 1);
    const auto idx = std::min(static_cast<size_t>((x - x0) / dx), samples.size() - 2);
    const auto& A = samples[idx];
    const auto& B = samples[idx + 1];
    const double t = (x - A.x) / dx;

    double h, hp;
    if (t < 1e-12) {
        h = A.h;
        hp = A.hp;
    } else if (t > 1.0 - 1e-12) {
        h = B.h;
        hp = B.hp;
    } else {
        const double ppA = 0.5 * dP(A.h), ppB = 0.5 * dP(B.h);
        const double pppA = 0.5 * ddP(A.h) * A.hp, pppB = 0.5 * ddP(B.h) * B.hp;
        const double dx2 = dx * dx;
        h = quintic(A.h, dx * A.hp, dx2 * ppA, B.h, dx * B.hp, dx2 * ppB, t);
        hp = quintic(A.hp, dx * ppA, dx2 * pppA, B.hp, dx * ppB, dx2 * pppB, t);
    }
    return {h, hp, 0.5 * dP(h), 0.5 * ddP(h) * hp};
}

double ProfileSolution::max_energy_residual() const {
    double worst = 0;
    for (const auto& s : samples) worst = std::max(worst, std::abs(s.hp * s.hp - P(s.h)));
    return worst;
}

ProfileSolution integrate_h(double a, double b, double c, ProfileVariant variant, double h0,
                            int slope_sign, double x_max, double step) {
    if (b <= 0) throw std::invalid_argument("integrate_h: b must be positive");
    if (variant == ProfileVariant::S1 && a <= 0)
        throw std::invalid_argument("integrate_h: S1 requires a > 0");
    if (step <= 0 || x_max <= 0) throw std::invalid_argument("integrate_h: bad step or range");

    const double sgn = variant == ProfileVariant::S1 ? -1.0 : 1.0;
    auto domain_ok = [&](double h) {
        const double Q = a - h * h;
        return variant == ProfileVariant::S1 ? Q > 0 : Q < 0;
    };
    if (!domain_ok(h0))
        throw std::invalid_argument("integrate_h: domain inequality violated at h0");

    const double P0 = eval_P(a, b, c, sgn, h0);
    if (P0 < 0) throw std::invalid_argument("integrate_h: P(h0) < 0");
    if (P0 == 0 && eval_dP(a, b, c, sgn, h0) == 0)
        throw std::invalid_argument("integrate_h: constant-solution initial data");

    ProfileSolution sol;
    sol.a = a;
    sol.b = b;
    sol.c = c;
    sol.variant = variant;
    sol.step = step;

    double h = h0;
    double hp = (slope_sign >= 0 ? 1.0 : -1.0) * std::sqrt(P0);
    sol.samples.push_back({0.0, h, hp});

    auto rhs = [&](double hh, double pp, double& dh, double& dp) {
        dh = pp;
        dp = 0.5 * eval_dP(a, b, c, sgn, hh);
    };

    const auto n = static_cast<long>(std::llround(x_max / step));
    for (long i = 1; i <= n; ++i) {
        double k1h, k1p, k2h, k2p, k3h, k3p, k4h, k4p;
        rhs(h, hp, k1h, k1p);
        rhs(h + 0.5 * step * k1h, hp + 0.5 * step * k1p, k2h, k2p);
        rhs(h + 0.5 * step * k2h, hp + 0.5 * step * k2p, k3h, k3p);
        rhs(h + step * k3h, hp + step * k3p, k4h, k4p);
        const double hn = h + (step / 6.0) * (k1h + 2 * k2h + 2 * k3h + k4h);
        const double pn = hp + (step / 6.0) * (k1p + 2 * k2p + 2 * k3p + k4p);
        if (!domain_ok(hn) || std::abs(pn) > kSlopeCap) break; // truncate admissible range
        h = hn;
        hp = pn;
        sol.samples.push_back({i * step, h, hp});
    }
    if (sol.samples.size() < 2)
        throw std::invalid_argument("integrate_h: admissible range collapsed at the start");
    sol.x_end = sol.samples.back().x;
    return sol;
}

} // namespace s2h2
