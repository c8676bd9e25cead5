#pragma once

#include "shearwave/constitutive.hpp"
#include "shearwave/functions.hpp"
#include "shearwave/lattice.hpp"
#include "shearwave/state.hpp"

#include <span>
#include <utility>
#include <vector>

namespace shearwave {

// ---------------------------------------------------------------------------
// Carroll waves and their generalization (full elastic system)
// ---------------------------------------------------------------------------

/// omega = k sqrt(Q(A^2) / rho)
double carroll_dispersion(const ShearModulus& m, double amplitude, double wavenumber);

/// Circularly polarized harmonic progressive wave
///   U = A cos(kx - wt),  V = sign * A sin(kx - wt).
/// sign = +1 is left, -1 right circular polarization.
class CarrollWave {
public:
    /// omega from the dispersion relation.
    CarrollWave(const ShearModulus& m, double amplitude, double wavenumber, int sign = +1);
    /// Checks rho w^2 = k^2 Q(A^2) to 1e-12 relative; throws InvalidArgument otherwise.
    CarrollWave(const ShearModulus& m, double amplitude, double wavenumber, double omega, int sign);

    double amplitude() const noexcept { return amplitude_; }
    double wavenumber() const noexcept { return k_; }
    double omega() const noexcept { return omega_; }
    int sign() const noexcept { return sign_; }
    double phase_speed() const noexcept { return omega_ / k_; }

private:
    double amplitude_, k_, omega_;
    int sign_;
};

StrainState eval_carroll(const CarrollWave& w, double x, double t);
/// Strains plus the velocities M = u_t, N = v_t of the same wave.
FullState eval_carroll_full(const CarrollWave& w, double x, double t);

/// theta = F(x + direction * c t), c = sqrt(Q(A^2)/rho),
/// (U, V) = (A cos theta, polarization * A sin theta).
/// The characteristic direction and the polarization sign are independent.
struct GeneralizedCarroll {
    ShearModulus modulus;
    double amplitude = 1.0;
    ProfileFunction profile;
    int direction = -1;
    int polarization = +1;

    double speed() const;
};

StrainState eval_generalized_carroll(const GeneralizedCarroll& g, double x, double t);
FullState eval_generalized_carroll_full(const GeneralizedCarroll& g, double x, double t);

/// d'Alembert solution of the linear (Mooney-Rivlin) system with wave speed c
/// for initial strains and velocities given as functions of x.
struct DalembertSolution {
    double speed;
    ProfileFunction U0, V0, M0, N0;
};

FullState eval_dalembert(const DalembertSolution& d, double x, double t);

// ---------------------------------------------------------------------------
// Asymptotic system U_X = beta[(U^2+V^2)U]_tau, V_X = beta[(U^2+V^2)V]_tau
// ---------------------------------------------------------------------------

/// Constant-amplitude family: xi = beta A^2 X + tau, (U, V) = A (cos Theta(xi), sin Theta(xi)).
StrainState eval_asymptotic_linear(double beta, double amplitude, const ProfileFunction& theta,
                                   double X, double tau);

/// Plane-polarized simple wave rho = Phi(tau + 3 beta X rho^2) by damped Newton
/// from rho_guess. Throws NoConvergence when Newton fails or the root lies past
/// the characteristic fold (post-breaking query).
double eval_simple_wave(double beta, const ProfileFunction& phi, double X, double tau,
                        double rho_guess);

/// Same, following the smooth branch by continuation in X from the X = 0 root Phi(tau).
double eval_simple_wave(double beta, const ProfileFunction& phi, double X, double tau);

/// Commuting hydrodynamic symmetry data: s3(theta) and s4(rho).
struct HodographData {
    ProfileFunction s3;
    ProfileFunction s4;
};

struct HodographPoint {
    double X;
    double tau;
};

/// X = s3/(2 beta rho^3) - s4'/(2 beta rho),  tau = -3 s3/(2 rho) - s4 + rho s4'/2.
HodographPoint hodograph_forward(const HodographData& h, double beta, double theta, double rho);

/// Jacobian d(X, tau)/d(theta, rho) of hodograph_forward, row-major.
std::array<double, 4> hodograph_jacobian(const HodographData& h, double beta, double theta, double rho);

/// Inverts hodograph_forward near the seed by damped 2D Newton to 1e-10.
/// Throws SingularJacobian on the fold locus and NoConvergence otherwise.
PolarState hodograph_invert(const HodographData& h, double beta, double X, double tau, PolarState seed);

/// Samples the hodograph solution on an (X, tau) lattice, continuing the
/// Newton seed across each row from its neighbour.
PolarField hodograph_field(const HodographData& h, double beta, const Lattice& lattice, PolarState seed);

// ---------------------------------------------------------------------------
// Temple family U_tt = [P U]_xx, V_tt = [P V]_xx
// ---------------------------------------------------------------------------

/// U = F(x + direction sqrt(A) t), V = Psi(U; A) from the level set P(U, V) = A.
struct OverdeterminedSolution {
    TempleFlux flux;
    double level = 1.0;
    ProfileFunction profile;
    int direction = -1;
    Interval v_bracket{0.0, 1.0};
};

StrainState eval_overdetermined(const OverdeterminedSolution& s, double x, double t);

/// u = phi(t) e^{kx}, v = phi(t) e^{-kx} with phi'' = k^2 P(phi^2) phi, for a flux
/// of product form P = P(uv).
class SeparableSolution {
public:
    SeparableSolution(std::vector<double> t, std::vector<double> phi, std::vector<double> dphi, double k)
        : t_(std::move(t)), phi_(std::move(phi)), dphi_(std::move(dphi)), k_(k) {}

    const std::vector<double>& t() const noexcept { return t_; }
    const std::vector<double>& phi() const noexcept { return phi_; }
    const std::vector<double>& dphi() const noexcept { return dphi_; }
    double wavenumber() const noexcept { return k_; }

    double u(double x, std::size_t i) const;
    double v(double x, std::size_t i) const;

private:
    std::vector<double> t_, phi_, dphi_;
    double k_;
};

/// Classical RK4 on the supplied increasing time grid; throws StepFailure if phi
/// leaves the evaluable domain.
SeparableSolution eval_separable(const TempleFlux& f, double k, double phi0, double dphi0,
                                 std::span<const double> t_grid);

// ---------------------------------------------------------------------------
// Potential variable phi_tau = rho, phi_X = beta rho^3
// ---------------------------------------------------------------------------

struct PotentialField {
    Sheet phi;
    /// max |phi via tau-then-X path - phi via X-then-tau path|
    double path_discrepancy = 0.0;
    /// max |D_X rho - D_tau(beta rho^3)| over the interior (centered stencils)
    double cross_residual = 0.0;
    /// threshold path_discrepancy was checked against
    double tolerance = 0.0;
};

/// Trapezoid quadrature of the potential on the rho sheet's (X, tau) lattice,
/// phi(X_0, tau_0) = 0. Throws InconsistentField when the two quadrature paths
/// disagree by more than tolerance_factor * (dX^2 + dtau^2) * scale.
PotentialField potential_phi(const Sheet& rho, double beta, double tolerance_factor = 1.0);

}  // namespace shearwave
