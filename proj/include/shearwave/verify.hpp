#pragma once

#include "shearwave/constitutive.hpp"
#include "shearwave/functions.hpp"
#include "shearwave/lattice.hpp"
#include "shearwave/simulate.hpp"

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace shearwave {

struct LevelNorms {
    double h = 0.0;     ///< spatial step of the level
    double l2 = 0.0;    ///< root-mean-square over the evaluated points
    double linf = 0.0;  ///< max abs
    double floor = 0.0; ///< roundoff level of the stencil on this level
};

/// Residual norms over nested refinement levels (h, h/2, h/4, ...).
struct ResidualReport {
    std::vector<LevelNorms> levels;
    /// Least-squares slope of log(rms residual) against log(h).
    double order = 0.0;
    double order_linf = 0.0;
    /// The residual sits at roundoff on every level (an identity, no decay to measure).
    bool exact = false;
    double target = 1.8;
    bool pass = false;
};

/// Builds a report from per-level norms. A level whose max residual does not
/// exceed its roundoff floor counts as exact; all levels exact marks the report
/// exact (order reported as +infinity).
ResidualReport make_report(std::vector<LevelNorms> levels, double target);

/// Least-squares slope of log(e) against log(h).
double fitted_order(std::span<const double> h, std::span<const double> e);

/// Centered residuals of U_t - M_x, M_t - [Q~U]_x, V_t - N_x, N_t - [Q~V]_x.
/// Each level needs at least 3 time rows (InsufficientSnapshots).
ResidualReport residual_full(std::span<const FullField> levels, const ShearModulus& m, double target = 1.8);

/// Centered residuals of theta_X - beta rho^2 theta_tau and rho_X - 3 beta rho^2 rho_tau.
ResidualReport residual_asymptotic(std::span<const PolarField> levels, double beta, double target = 1.8);

/// Centered residuals of U_tt - [P U]_xx and V_tt - [P V]_xx.
ResidualReport residual_temple(std::span<const StrainField> levels, const TempleFlux& f, double target = 1.8);

/// Densities of the hydrodynamic conservation laws,
///   X = -c1' rho^2 - 3 c1 rho - c2 rho,  T = beta (-3 c1' rho^4 - 3 c1 rho^3 - c2 rho^3),
/// with c1 = c1(rho) and c2 = c2(theta).
struct ConservationSpec {
    ProfileFunction c1;
    ProfileFunction c2;

    double x_density(double theta, double rho) const;
    double t_density(double theta, double rho, double beta) const;
};

enum class Orientation {
    /// D_X[X] - D_tau[T] = 0
    XEvolution,
    /// D_tau[X] - D_X[T] = 0
    TauEvolution,
    Both,
    Neither,
};

std::string to_string(Orientation o);

struct ConservationReport {
    ResidualReport x_evolution;
    ResidualReport tau_evolution;
    Orientation orientation = Orientation::Neither;
};

/// Evaluates both density/flux orderings and records which decays.
ConservationReport conservation_study(std::span<const PolarField> levels, double beta,
                                      const ConservationSpec& spec, double target = 1.8);

/// conservation_study, throwing NeitherOrientationDecays when no ordering passes.
ConservationReport conservation_residual(std::span<const PolarField> levels, double beta,
                                         const ConservationSpec& spec, double target = 1.8);

/// First-order jet (theta, rho, theta_tau, rho_tau).
using Jet1 = std::array<double, 4>;

/// Second-order jet (theta, rho, theta_tau, rho_tau, theta_tautau, rho_tautau).
using Jet2 = std::array<double, 6>;

/// Generalized vector field phi^theta d/dtheta + phi^rho d/drho whose
/// coefficients depend on the first-order jet.
class SymmetrySpec {
public:
    using Characteristic = std::function<std::array<double, 2>(const Jet1&)>;
    /// d(phi^theta, phi^rho)/d(theta, rho, theta_tau, rho_tau)
    using JetGradient = std::function<std::array<std::array<double, 4>, 2>(const Jet1&)>;

    SymmetrySpec(Characteristic phi, JetGradient gradient = {}, std::string label = {});

    /// phi^theta = -(s3/rho + s4) theta_tau, phi^rho = -(s4' rho + s4) rho_tau.
    static SymmetrySpec hydrodynamic(ProfileFunction s3, ProfileFunction s4);

    /// phi^theta = -s1(theta, rho, theta_tau), phi^rho = s2(rho) rho_tau, after
    /// checking rho d s1/d rho + theta_tau d s1/d theta_tau + s2 theta_tau = 0 to
    /// 1e-8 on the probe jets (InvalidArgument otherwise).
    static SymmetrySpec first_order(std::function<double(double, double, double)> s1, ProfileFunction s2,
                                    std::span<const Jet1> probes);

    std::array<double, 2> operator()(const Jet1& j) const { return phi_(j); }
    std::array<std::array<double, 4>, 2> gradient(const Jet1& j) const;
    const std::string& label() const noexcept { return label_; }

private:
    Characteristic phi_;
    JetGradient grad_;
    std::string label_;
};

/// Residual of the linearized system
///   D_X phi^theta - 2 beta rho theta_tau phi^rho - beta rho^2 D_tau phi^theta,
///   D_X phi^rho - 6 beta rho rho_tau phi^rho - 3 beta rho^2 D_tau phi^rho,
/// with the characteristic built from centered tau-derivatives of the field.
ResidualReport linearized_symmetry_residual(std::span<const PolarField> levels, double beta,
                                            const SymmetrySpec& spec, double target = 1.8);

struct CommutatorReport {
    /// max |component of {phi, psi}| over the jets
    double max_abs = 0.0;
    /// max over jets of the largest individual term entering the bracket
    double scale = 0.0;
};

/// Jacobi bracket of phi with psi = beta rho^2 theta_tau d/dtheta + 3 beta rho^2 rho_tau d/drho,
/// evaluated algebraically on raw jet coordinates.
CommutatorReport commutator_residual(const SymmetrySpec& spec, double beta, std::span<const Jet2> jets);

struct ConvergenceLevel {
    std::size_t n = 0;
    double h = 0.0;
    double linf = 0.0;
    double l2 = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceLevel> levels;
    double order_linf = 0.0;
    double order_l2 = 0.0;
};

using RunFactory = std::function<StateGrid(std::size_t n)>;
using OracleFactory = std::function<StateGrid(std::size_t n)>;

/// Runs the solver at each resolution and compares every oracle field with the
/// same-named solver field at the final coordinate. Oracle exceptions surface
/// as OracleFailure.
ConvergenceReport convergence_study(const RunFactory& run, const OracleFactory& oracle,
                                    std::span<const std::size_t> levels);

/// Uses the finest level, restricted by cell averaging, as the oracle for the
/// others. Levels must be powers-of-two multiples of each other.
ConvergenceReport convergence_study_self(const RunFactory& run, std::span<const std::size_t> levels);

/// Averages a fine grid down to n cells (n must divide the fine resolution).
StateGrid restrict_to(const StateGrid& fine, std::size_t n);

}  // namespace shearwave
