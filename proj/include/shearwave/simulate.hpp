#pragma once

#include "shearwave/constitutive.hpp"
#include "shearwave/functions.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace shearwave {

enum class Boundary { Periodic, Outflow };

struct Grid1D {
    std::size_t n = 0;
    double a = 0.0;
    double b = 1.0;
    Boundary boundary = Boundary::Periodic;

    double h() const noexcept { return (b - a) / static_cast<double>(n); }
    double center(std::size_t i) const noexcept { return a + (static_cast<double>(i) + 0.5) * h(); }
    /// Throws InvalidArgument unless n >= 8 and b > a.
    void validate() const;
};

enum class Scheme { LaxFriedrichs, MusclMinmod };

std::string to_string(Scheme s);
std::string to_string(Boundary b);

struct SimulationConfig {
    Scheme scheme = Scheme::LaxFriedrichs;
    double cfl = 0.5;
    double start = 0.0;
    /// Final evolution coordinate (t for the full system, X otherwise).
    double end = 1.0;
    /// Keep every k-th step as a snapshot; 0 keeps only the initial and final states.
    std::size_t snapshot_stride = 0;
    /// The gradient monitor trips when the max gradient exceeds this factor
    /// times its initial value.
    double blowup_factor = 50.0;
    /// Stop integrating as soon as the gradient monitor trips.
    bool stop_at_blowup = false;

    /// Throws InvalidArgument unless 0 < cfl <= 0.9, end > start, blowup_factor > 1.
    void validate() const;
};

/// Named cell-centred fields on a 1D grid.
struct StateGrid {
    Grid1D grid;
    std::vector<std::string> names;
    std::vector<std::vector<double>> fields;

    const std::vector<double>& field(const std::string& name) const;
    std::vector<double>& field(const std::string& name);

    /// Evaluates f(x) -> one value per name at every cell centre.
    static StateGrid sample(const Grid1D& grid, std::vector<std::string> names,
                            const std::function<std::vector<double>(double)>& f);
};

struct StepDiagnostics {
    double coordinate = 0.0;
    double step = 0.0;
    double max_speed = 0.0;
    double max_gradient = 0.0;
    std::vector<double> total_variation;
};

struct Snapshot {
    double coordinate = 0.0;
    StateGrid state;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    std::vector<StepDiagnostics> diagnostics;
    double initial_max_gradient = 0.0;
    std::vector<double> initial_total_variation;
    /// First evolution coordinate at which the gradient monitor tripped.
    std::optional<double> blowup_coordinate;
    std::size_t steps = 0;

    const Snapshot& final() const { return snapshots.back(); }
};

/// U_t = M_x, M_t = [Q~ U]_x, V_t = N_x, N_t = [Q~ V]_x, Q~ = Q(U^2+V^2)/rho.
/// Fields of init: U, M, V, N. Throws HyperbolicityLoss when a squared wave
/// speed becomes non-positive and BlowupDetected when the gradient monitor trips
/// while the CFL step has collapsed below 1e-9 (b - a).
Trajectory evolve_full(const ShearModulus& m, const StateGrid& init, const SimulationConfig& cfg);

/// U_X = beta[(U^2+V^2)U]_tau, V_X = beta[(U^2+V^2)V]_tau with tau on the grid.
/// Fields of init: U, V.
Trajectory evolve_asymptotic(double beta, const StateGrid& init, const SimulationConfig& cfg);

/// rho_X = beta (rho^3)_tau. Field of init: rho (nonnegative).
Trajectory evolve_scalar(double beta, const StateGrid& rho0, const SimulationConfig& cfg);

/// First crossing of the characteristics dtau/dX = -3 beta rho^2 of the scalar
/// law: 1 / max_tau (d(3 beta rho0^2)/dtau)^+, or +infinity when none cross.
double breaking_estimate(double beta, const ProfileFunction& rho0, std::span<const double> tau_grid);

/// cfl * h / max_speed capped by the remaining interval; a vanishing speed
/// returns the cap.
double cfl_step(double max_speed, double h, double cfl, double remaining);

/// Fast and slow squared speeds {Q~, Q~ + 2 Q~'(s) s} of the full system at (U, V).
std::array<double, 2> full_squared_speeds(const ShearModulus& m, double U, double V);

/// Threads used for the per-interface flux loops (1 when built without OpenMP).
void set_thread_count(int n);
int thread_count();

}  // namespace shearwave
