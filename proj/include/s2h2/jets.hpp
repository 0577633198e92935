#pragma once

#include <cmath>

// Univariate Taylor jets of order 3: value and first three derivatives with
// respect to one parameter. Forward-mode rules keep every surface jet in this
// project analytic; no derivative here is ever obtained by differencing.

namespace s2h2 {

struct Jet1 {
    double f = 0, d1 = 0, d2 = 0, d3 = 0;

    static Jet1 variable(double x) { return {x, 1, 0, 0}; }
    static Jet1 constant(double c) { return {c, 0, 0, 0}; }

    double deriv(int i) const {
        switch (i) {
            case 0: return f;
            case 1: return d1;
            case 2: return d2;
            default: return d3;
        }
    }
};

inline Jet1 operator+(const Jet1& a, const Jet1& b) {
    return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}
inline Jet1 operator-(const Jet1& a, const Jet1& b) {
    return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}
inline Jet1 operator-(const Jet1& a) { return {-a.f, -a.d1, -a.d2, -a.d3}; }

inline Jet1 operator*(const Jet1& a, const Jet1& b) {
    return {a.f * b.f,
            a.d1 * b.f + a.f * b.d1,
            a.d2 * b.f + 2 * a.d1 * b.d1 + a.f * b.d2,
            a.d3 * b.f + 3 * a.d2 * b.d1 + 3 * a.d1 * b.d2 + a.f * b.d3};
}

inline Jet1 operator*(double c, const Jet1& a) { return {c * a.f, c * a.d1, c * a.d2, c * a.d3}; }
inline Jet1 operator*(const Jet1& a, double c) { return c * a; }
inline Jet1 operator+(const Jet1& a, double c) { return {a.f + c, a.d1, a.d2, a.d3}; }
inline Jet1 operator+(double c, const Jet1& a) { return a + c; }
inline Jet1 operator-(const Jet1& a, double c) { return a + (-c); }
inline Jet1 operator-(double c, const Jet1& a) { return (-a) + c; }

// Chain rule (Faa di Bruno to order 3) for g(u) given the derivatives of g at
// u.f as plain numbers.
inline Jet1 apply_unary(const Jet1& u, double g0, double g1, double g2, double g3) {
    return {g0,
            g1 * u.d1,
            g2 * u.d1 * u.d1 + g1 * u.d2,
            g3 * u.d1 * u.d1 * u.d1 + 3 * g2 * u.d1 * u.d2 + g1 * u.d3};
}

inline Jet1 jet_sin(const Jet1& u) {
    const double s = std::sin(u.f), c = std::cos(u.f);
    return apply_unary(u, s, c, -s, -c);
}
inline Jet1 jet_cos(const Jet1& u) {
    const double s = std::sin(u.f), c = std::cos(u.f);
    return apply_unary(u, c, -s, -c, s);
}
inline Jet1 jet_sinh(const Jet1& u) {
    const double s = std::sinh(u.f), c = std::cosh(u.f);
    return apply_unary(u, s, c, s, c);
}
inline Jet1 jet_cosh(const Jet1& u) {
    const double s = std::sinh(u.f), c = std::cosh(u.f);
    return apply_unary(u, c, s, c, s);
}
inline Jet1 jet_sqrt(const Jet1& u) {
    const double r = std::sqrt(u.f);
    return apply_unary(u, r, 0.5 / r, -0.25 / (r * u.f), 0.375 / (r * u.f * u.f));
}
inline Jet1 jet_inv(const Jet1& u) {
    const double w = 1.0 / u.f;
    return apply_unary(u, w, -w * w, 2 * w * w * w, -6 * w * w * w * w);
}
inline Jet1 operator/(const Jet1& a, const Jet1& b) { return a * jet_inv(b); }
inline Jet1 operator/(const Jet1& a, double c) { return a * (1.0 / c); }
inline Jet1 operator/(double c, const Jet1& b) { return c * jet_inv(b); }

// g(s(x)) where `outer` holds s-derivatives of g at s.f and `inner` holds
// x-derivatives of s.
inline Jet1 compose(const Jet1& outer, const Jet1& inner) {
    return {outer.f,
            outer.d1 * inner.d1,
            outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2,
            outer.d3 * inner.d1 * inner.d1 * inner.d1 + 3 * outer.d2 * inner.d1 * inner.d2 +
                outer.d1 * inner.d3};
}

} // namespace s2h2
