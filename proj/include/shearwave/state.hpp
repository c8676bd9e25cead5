#pragma once

#include <cmath>

namespace shearwave {

/// Strains U = u_x, V = v_x.
struct StrainState {
    double U = 0.0;
    double V = 0.0;
};

/// Strains plus velocities M = u_t, N = v_t of the first-order elastic system.
struct FullState {
    double U = 0.0;
    double V = 0.0;
    double M = 0.0;
    double N = 0.0;
};

/// Modulus and argument of W = U + iV.
struct PolarState {
    double rho = 0.0;
    double theta = 0.0;
};

inline StrainState to_strain(PolarState p) noexcept {
    return {p.rho * std::cos(p.theta), p.rho * std::sin(p.theta)};
}

/// theta is taken in (-pi, pi]; at rho = 0 it is 0.
inline PolarState to_polar(StrainState s) noexcept {
    return {std::hypot(s.U, s.V), std::atan2(s.V, s.U)};
}

}  // namespace shearwave
