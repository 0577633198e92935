#pragma once

#include "s2h2/extrinsic.hpp"

// Complexified Frenet data (gamma_j, f_j, xi) of PMC surfaces in S^2 x H^2
// seen inside R^6_1, the adapted real frame (X_1, X_2, xi_1, xi_2) that
// diagonalizes the tangential and normal parts of the product structure, and
// finite-difference residuals for the PDE systems both frames satisfy.
//
// gamma_j convention (pinned empirically on the curve-product family, where
// the invariants below force it):
//     J_1 dz = i C_1 dz + gamma_1 xi,    J_2 dz = i C_2 dz + gamma_2 xi-bar,
// so gamma_1 = <J_1 dz, xi-bar> and gamma_2 = <J_2 dz, xi> under the
// bilinear extension of the Minkowski inner product.

namespace s2h2 {

struct FrenetData {
    double u = 0;       // conformal log factor
    double C1 = 0, C2 = 0;
    Complex gamma1{0, 0}, gamma2{0, 0};
    Complex f1{0, 0}, f2{0, 0};
    Vec6 eta = Vec6::Zero(), eta_tilde = Vec6::Zero(); // xi = (eta - i eta~)/sqrt(2)
    double H_norm = 0;

    Complex hopf_alternative() const {
        return 2.0 * std::sqrt(2.0) * H_norm * (f1 + f2) + gamma1 * gamma2;
    }

    // invariant residuals, all ~0 on PMC surfaces
    double gammanorm_residual = 0;     // eq: |gamma_j|^2 = e^{2u}(1-C_j^2)/2
    double gamma_product_residual = 0; // gamma_1 gamma_2 = <F dz, dz>
    double xi_norm_residual = 0;       // <xi, xi-bar> = 1, <xi, xi> = 0
};

FrenetData frenet_data(const ImmersionJet& jet);

struct FrenetPdeResiduals {
    double dzC[2];         // dz C_j = 2i e^{-2u} conj(gamma_j) f_j - i |H| gamma_j / sqrt(2)
    double dzbar_gamma[2]; // dzbar gamma_j = -i |H| e^{2u} C_j / sqrt(2)
    double dz_gamma[2];    // dz gamma_j = 2 (dz u) gamma_j - 2 i C_j f_j
    double dzbar_f[2];     // dzbar f_1 = i e^{2u} C_2 gamma_1 / 4 (and 1 <-> 2)
    double max_residual = 0;
};

FrenetPdeResiduals frenet_pde_residuals(const Surface& surf, double x, double y,
                                        double fd_step = 1e-3);

struct AdaptedFrame {
    Vec6 X1, X2;   // orthonormal tangent eigenvectors of f = (F.)^T
    Vec6 xi1, xi2; // orthonormal normal eigenvectors of f_perp, paired opposite
    double alpha = 0, beta = 0; // cos(alpha) > cos(beta); sin fixed >= 0 at the point
    double gamma = 0;           // H/|H| = cos(gamma) xi1 + sin(gamma) xi2
    double nu = 0;              // off-trace coefficient of A_{H~}
    double H_norm = 0;

    double fmatrix_residual = 0;      // 4x4 reconstruction against eq. (matrixF) form
    double matrixAH_residual = 0;     // diagonal form |H|^2 -+ (cosA - cosB)/8
    double matrixHtilde_residual = 0; // traceless diagonal form of A_{H~}
};

AdaptedFrame adapted_frame(const ImmersionJet& jet);

struct AdaptedPdeResiduals {
    double xalpha[2];  // X1(alpha) = -2<h(X1,X1),xi1>, X2(alpha) = 0
    double xbeta[2];   // X1(beta) = 0, X2(beta) = -2<h(X2,X2),xi2>
    double nabla[2];   // <nabla_{X1}X1, X2> and <nabla_{X2}X1, X2> connection formulas
    double xgamma[2];
    double xnu[2];
    double hXiXi[4];   // the four <h(Xi,Xi), xi_j> identities (Theta = 0 surfaces)
    double sin_alpha = 0, sin_beta = 0;
    double nucomp_iii = 0;   // |8|H|^2 + (cosA-cosB)((1-nu^2)cos 2g + 2 nu sin 2g)|
    int nucomp_disjunct = 0; // 1, 2 or 3; 0 if none holds within tolerance
    double max_fd_residual = 0;
    double max_identity_residual = 0;
};

AdaptedPdeResiduals adapted_pde_residuals(const Surface& surf, double x, double y,
                                          double fd_step = 1e-3, double nucomp_tol = 1e-4);

} // namespace s2h2
