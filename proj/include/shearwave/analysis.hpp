#pragma once

#include "shearwave/constitutive.hpp"
#include "shearwave/functions.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace shearwave {

using Vec2 = std::array<double, 2>;

/// Eigenstructure of the Temple matrix
///   [[P_u u + P, P_v u], [P_u v, P_v v + P]]
/// at one state. Eigenvectors are scaled to first component 1 when possible,
/// otherwise to second component 1 (the corresponding *_projective flag is set).
struct EigenReport {
    double u = 0.0, v = 0.0;
    double lambda1 = 0.0;  ///< P + u P_u + v P_v
    double lambda2 = 0.0;  ///< P
    Vec2 d1{}, d2{};
    Vec2 grad_lambda1{}, grad_lambda2{};
    double ld1 = 0.0;  ///< grad(lambda1) . d1
    double ld2 = 0.0;  ///< grad(lambda2) . d2, identically zero
    bool d1_projective = false;
    bool d2_projective = false;
};

EigenReport temple_eigen(const TempleFlux& f, double u, double v);

enum class Flag { Set, Cleared, Indeterminate };

std::string to_string(Flag f);

/// Two-threshold decision: Set if residual <= 1e-8, Cleared if >= 1e-4.
Flag decide_flag(double residual) noexcept;

struct ClassificationReport {
    struct Entry {
        Flag flag = Flag::Indeterminate;
        double residual = 0.0;  ///< max normalized residual over the samples
        bool evaluated = true;
    };
    Entry equal_eigenvalues;       ///< |lambda1 - lambda2|
    Entry completely_exceptional;  ///< |grad(lambda1) . d1|
    Entry hamiltonian;             ///< |v P_v - u P_u|
    Entry decouples;               ///< decoupling condition in the (alpha, u/v) chart
    std::size_t sample_count = 0;
};

/// Classifies a flux over sample states. The decoupling flag needs the chart
/// function alpha (P = R(alpha)); without it the entry is not evaluated.
/// Throws ChartFailure when the (alpha, u/v) change of variables is singular at
/// a sample.
ClassificationReport classify(const TempleFlux& f, std::span<const Vec2> samples,
                              const std::optional<BivariateFunction>& alpha = std::nullopt);

/// Residual of the decoupling condition at (u, v):
///   u_b (a_uu u + a_uv v + a_u) + v_b (a_uv u + a_vv v + a_v),
/// with (u_b, v_b) the derivative of (u, v) along u/v at fixed alpha.
double decoupling_residual(const BivariateFunction& alpha, double u, double v);

/// A pair of fluxes for u_t = [A]_x, v_t = [B]_x.
struct FluxPair {
    BivariateFunction A;
    BivariateFunction B;
};

struct CompatibilityResiduals {
    double g4 = 0.0;  ///< B_u phi_v^2 + (A_u - B_v) phi_u phi_v - A_v phi_u^2 (max abs)
    double g5 = 0.0;  ///< variance over samples of A_u - A_v phi_u / phi_v
};

/// Evaluates the compatibility and linearity conditions of the restriction of
/// the flux pair to a level set phi = const. Throws DegenerateConstraint where
/// phi_v = 0.
CompatibilityResiduals compatibility_residuals(const FluxPair& flux, const BivariateFunction& phi,
                                               std::span<const Vec2> samples);

/// A = H(phi) u + Phi(phi), B = H(phi) v + Psi(phi). Verifies g4 ~ 0 at a few
/// points near (1, 1) and throws InvalidArgument if the check fails.
FluxPair construct_temple_flux(const ProfileFunction& H, const ProfileFunction& Phi,
                               const ProfileFunction& Psi, const BivariateFunction& phi);

/// Diagonal (Riemann-invariant) form of the Temple system for a user-declared
/// chart alpha with P = R(alpha):
///   alpha_t - f alpha_x = 0,  b_t - R(alpha) b_x = 0,  b = u/v,
///   f = R'(alpha) (alpha_u u + alpha_v v) + R(alpha).
struct DiagonalForm {
    BivariateFunction alpha;
    ProfileFunction R;
    TempleFlux flux;

    static double beta_r(double u, double v) { return u / v; }
    /// Effective speed of the alpha equation at (u, v).
    double speed(double u, double v) const;
};

/// Builds the diagonal form after checking P = R(alpha) to 1e-10 on the samples.
/// Throws ChartFailure when the relation fails or the chart is singular.
DiagonalForm diagonal_form(const TempleFlux& f, const BivariateFunction& alpha, const ProfileFunction& R,
                           std::span<const Vec2> samples);

/// Integrates R'(a)(s2 - s1) + s2'(a)(f(a) - R(a)) = 0 on an increasing grid
/// with s2(alpha_grid[0]) = s2_initial (classical RK4). Throws
/// CoincidenceOfSpeeds when |f - R| < 1e-12 somewhere on the range.
std::vector<double> symmetry_coefficient_s2(const ProfileFunction& s1, const ProfileFunction& R,
                                            const ProfileFunction& f, std::span<const double> alpha_grid,
                                            double s2_initial);

/// The alpha = uv specialization, f = 2 alpha R' + R, which reduces to
/// s2 - s1 + 2 alpha s2' = 0 independently of R.
std::vector<double> symmetry_coefficient_s2_product(const ProfileFunction& s1,
                                                    std::span<const double> alpha_grid, double s2_initial);

/// Chart functions for the decoupling test.
BivariateFunction product_chart();                    ///< alpha = u v
BivariateFunction exp_difference_chart(double a, double c);  ///< alpha = exp(a (u - v) + c)

}  // namespace shearwave
