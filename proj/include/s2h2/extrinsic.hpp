#pragma once

#include "s2h2/surfaces.hpp"

#include <complex>
#include <string>

// Pointwise extrinsic analysis of an immersed surface in S^2 x H^2:
// fundamental forms, mean curvature and PMC residual, the Hopf coefficient
// 4<h(dz,dz),H> + <F dz,dz>, Kahler functions, shape operators, the tangential
// part f of the product structure, and the factor projection rank defects.

namespace s2h2 {

using Complex = std::complex<double>;

inline constexpr double kRankTol = 1e-10;

struct FirstFundamental {
    double E = 0, F = 0, G = 0;
    double det() const { return E * G - F * F; }
};

struct TangentFrame {
    Vec6 e1, e2; // orthonormal, oriented like (dx, dy)
};

struct NormalFrame {
    Vec6 n1, n2; // orthonormal basis of the normal space of Sigma inside T(S^2 x H^2)
};

struct SecondFundamental {
    Vec6 hxx, hxy, hyy; // chart components, normal to Sigma within T(S^2 x H^2)
};

FirstFundamental first_fundamental(const ImmersionJet& jet);
TangentFrame tangent_frame(const ImmersionJet& jet);
NormalFrame normal_frame(const ImmersionJet& jet);
SecondFundamental second_fundamental(const ImmersionJet& jet);

// Mean curvature vector and its squared length.
std::pair<Vec6, double> mean_curvature(const ImmersionJet& jet);

// Unit normal pair (eta, eta~) with eta = H/|H| and (e1, e2, eta~, eta)
// positively oriented. Throws when H = 0.
std::pair<Vec6, Vec6> oriented_normal_pair(const ImmersionJet& jet);

bool chart_is_conformal(const ImmersionJet& jet, double tol = 1e-6);

// Coefficient of the Hopf differential in the chart; requires a conformal
// chart.
Complex hopf_coefficient(const ImmersionJet& jet);
Complex hopf_coefficient(const ImmersionJet& jet, const Vec6& H_vec);

std::pair<double, double> kahler_functions(const ImmersionJet& jet);

inline Mat2 adjugate2(const Mat2& m) {
    Mat2 r;
    r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return r;
}

struct ShapeData {
    Mat2 A_H;    // shape operator of the mean curvature vector
    Mat2 A_perp; // shape operator of H~ (same length, orthogonal to H)
    Mat2 f_mat;  // tangential part of F
    bool pseudo_umbilical = false;
    double ricci_residual = 0;      // |[A_n1, A_n2]|_F over an orthonormal normal pair
    double eqAH_residual = 0;       // |A_H - (|H|^2 id - f/8 + Adj(f)/8)|, Theta = 0 surfaces
    double relationAh_residual = 0; // metric-route vs direct-route shape operator entries
};
ShapeData shape_and_f(const ImmersionJet& jet);

// Smallest singular values of d(phi) and d(psi) in orthonormal frames.
std::pair<double, double> projection_rank_defect(const ImmersionJet& jet);
// Signed factor Jacobians; Jac(phi) = (C1+C2)/2 and Jac(psi) = (C1-C2)/2.
std::pair<double, double> factor_jacobians(const ImmersionJet& jet);

// |nabla^perp H| measured by central differences of the analytic H field,
// normalized by unit chart directions.
double pmc_residual(const Surface& surf, double x, double y, double fd_step = 1e-4);

// Codazzi residual |(nabla h)(X,Y,Z) - (nabla h)(Y,X,Z) - (F(X wedge Y)Z)^perp/2|
// for chart directions X, Y, Z in {0,1}.
double codazzi_residual(const Surface& surf, double x, double y, int X, int Y, int Z,
                        double fd_step = 1e-3);

struct ExtrinsicReport {
    double x = 0, y = 0;
    double E = 0, F_metric = 0, G = 0;
    double u = 0; // conformal log-factor, defined when the chart is conformal
    bool conformal = false;
    Vec6 H_vec = Vec6::Zero();
    double H_norm2 = 0;
    Complex theta{0, 0};
    double C1 = 0, C2 = 0;
    Mat2 A_H = Mat2::Zero(), A_perp = Mat2::Zero(), f_mat = Mat2::Zero();
    double smin_dphi = 0, smin_dpsi = 0;
    double pmc_residual = 0;
    bool pseudo_umbilical = false;
    double ricci_residual = 0;
    double relationAh_residual = 0;
};

ExtrinsicReport analyze(const Surface& surf, double x, double y, double fd_step = 1e-4);

std::string extrinsic_csv_header();
std::string extrinsic_csv_row(const ExtrinsicReport& r);

} // namespace s2h2
