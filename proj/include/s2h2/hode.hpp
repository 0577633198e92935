#pragma once

#include "s2h2/jets.hpp"

#include <stdexcept>
#include <vector>

// Profile-function ODE for the special surface families, integrated in the
// second-order form h'' = P'(h)/2. The first-order equation (h')^2 = P(h) is
// kept only as an energy monitor:
//   S1:  P(h) = (a - h^2 - b(1+(h-c)^2)) (a - h^2),   with a - h^2 > 0,
//   S2:  P(h) = (a - h^2 + b(1+(h-c)^2)) (a - h^2),   with h^2 - a > 0.

namespace s2h2 {

enum class ProfileVariant { S1, S2 };

struct ProfileSample {
    double x, h, hp;
};

struct ProfileSolution {
    double a = 0, b = 0, c = 0;
    ProfileVariant variant = ProfileVariant::S1;
    double step = 1e-3;
    double x_end = 0; // achieved admissible range is [0, x_end]
    std::vector<ProfileSample> samples;

    double P(double h) const;
    double dP(double h) const;
    double ddP(double h) const;

    // (h, h', h'', h''') at x; h'' = P'(h)/2 and h''' = P''(h) h'/2 are
    // computed from the ODE identity, never measured.
    Jet1 jet(double x) const;

    double max_energy_residual() const;
};

ProfileSolution integrate_h(double a, double b, double c, ProfileVariant variant, double h0,
                            int slope_sign, double x_max, double step = 1e-3);

} // namespace s2h2
