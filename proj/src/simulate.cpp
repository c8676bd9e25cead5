#include "shearwave/simulate.hpp"

#include "shearwave/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace shearwave {

namespace {

int g_threads = 1;

template <std::size_t N>
using Cell = std::array<double, N>;

inline double minmod(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

std::string coord_locus(double coordinate) {
    std::ostringstream os;
    os.precision(17);
    os << "coordinate=" << coordinate;
    return os.str();
}

// q_t + f(q)_x = 0 with q = (U, M, V, N).
struct FullSystem {
    static constexpr std::size_t N = 4;
    const ShearModulus& m;
    double safety;

    Cell<N> flux(const Cell<N>& q) const {
        const double qt = m.q(q[0] * q[0] + q[2] * q[2]) / m.rho;
        return {-q[1], -qt * q[0], -q[3], -qt * q[2]};
    }
    double speed(const Cell<N>& q) const {
        // NaN flags a non-positive squared speed; callers check outside parallel loops.
        const auto l2 = full_squared_speeds(m, q[0], q[2]);
        if (!(l2[0] > 0.0) || !(l2[1] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        return safety * std::sqrt(std::max(l2[0], l2[1]));
    }
};

// q = (U, V), flux -beta (U^2+V^2) (U, V); eigenvalues beta s and 3 beta s.
struct AsymptoticSystem {
    static constexpr std::size_t N = 2;
    double beta;

    Cell<N> flux(const Cell<N>& q) const {
        const double s = q[0] * q[0] + q[1] * q[1];
        return {-beta * s * q[0], -beta * s * q[1]};
    }
    double speed(const Cell<N>& q) const { return 3.0 * std::abs(beta) * (q[0] * q[0] + q[1] * q[1]); }
};

struct ScalarSystem {
    static constexpr std::size_t N = 1;
    double beta;

    Cell<N> flux(const Cell<N>& q) const { return {-beta * q[0] * q[0] * q[0]}; }
    double speed(const Cell<N>& q) const { return 3.0 * std::abs(beta) * q[0] * q[0]; }
};

template <std::size_t N>
void fill_ghosts(std::vector<Cell<N>>& q, std::size_t n, Boundary bc) {
    // Two ghost cells on each side; interior cells are q[2 .. n+1].
    for (std::size_t g = 0; g < 2; ++g) {
        if (bc == Boundary::Periodic) {
            q[g] = q[n + g];
            q[n + 2 + g] = q[2 + g];
        } else {
            q[g] = q[2];
            q[n + 2 + g] = q[n + 1];
        }
    }
}

template <std::size_t N>
void measure(const std::vector<Cell<N>>& q, std::size_t n, double h, Boundary bc, double& max_grad,
             std::vector<double>& tv) {
    max_grad = 0.0;
    tv.assign(N, 0.0);
    const std::size_t last = bc == Boundary::Periodic ? n + 2 : n + 1;
    for (std::size_t i = 2; i < last; ++i)
        for (std::size_t k = 0; k < N; ++k) {
            const double d = std::abs(q[i + 1][k] - q[i][k]);
            tv[k] += d;
            max_grad = std::max(max_grad, d / h);
        }
}

template <class System>
Trajectory run(const System& sys, const StateGrid& init, const SimulationConfig& cfg) {
    constexpr std::size_t N = System::N;
    cfg.validate();
    init.grid.validate();
    if (init.fields.size() != N)
        throw Error(ErrorCode::InvalidArgument, "initial state has the wrong number of fields");
    const std::size_t n = init.grid.n;
    const double h = init.grid.h();
    const Boundary bc = init.grid.boundary;
    for (const auto& f : init.fields)
        if (f.size() != n) throw Error(ErrorCode::InvalidArgument, "field length does not match the grid");

    std::vector<Cell<N>> q(n + 4), qm(n + 4), qp(n + 4);
    std::vector<Cell<N>> F(n + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < N; ++k) q[i + 2][k] = init.fields[k][i];

    auto to_state = [&]() {
        StateGrid s{init.grid, init.names, std::vector<std::vector<double>>(N, std::vector<double>(n))};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < N; ++k) s.fields[k][i] = q[i + 2][k];
        return s;
    };

    Trajectory traj;
    double coord = cfg.start;
    fill_ghosts(q, n, bc);
    measure(q, n, h, bc, traj.initial_max_gradient, traj.initial_total_variation);
    traj.snapshots.push_back({coord, to_state()});

    const double span = init.grid.b - init.grid.a;
    const int threads = g_threads;
    (void)threads;
    std::size_t step_index = 0;
    bool stopped = false;
    while (coord < cfg.end && !stopped) {
        fill_ghosts(q, n, bc);

        double smax = 0.0;
        int lost = 0;
#pragma omp parallel for reduction(max : smax, lost) num_threads(threads) schedule(static)
        for (std::size_t i = 2; i < n + 2; ++i) {
            const double sp = sys.speed(q[i]);
            if (sp >= 0.0)
                smax = std::max(smax, sp);
            else
                lost = 1;
        }
        if (lost) throw Error(ErrorCode::HyperbolicityLoss, "non-positive squared wave speed", coord_locus(coord));

        const double remaining = cfg.end - coord;
        const double dt = cfl_step(smax, h, cfg.cfl, remaining);
        const double nu = dt / h;

        if (cfg.scheme == Scheme::MusclMinmod) {
            // Limited slopes and Hancock half-step predictor on every cell
            // touching an interface, ghosts included.
#pragma omp parallel for num_threads(threads) schedule(static)
            for (std::size_t i = 1; i < n + 3; ++i) {
                Cell<N> lo, hi;
                for (std::size_t k = 0; k < N; ++k) {
                    const double d = minmod(q[i][k] - q[i - 1][k], q[i + 1][k] - q[i][k]);
                    lo[k] = q[i][k] - 0.5 * d;
                    hi[k] = q[i][k] + 0.5 * d;
                }
                const auto flo = sys.flux(lo), fhi = sys.flux(hi);
                for (std::size_t k = 0; k < N; ++k) {
                    const double corr = 0.5 * nu * (fhi[k] - flo[k]);
                    qm[i][k] = lo[k] - corr;
                    qp[i][k] = hi[k] - corr;
                }
            }
        }

        // Local Lax-Friedrichs flux at interface j + 1/2 between cells j+1 and j+2.
        int lost_face = 0;
#pragma omp parallel for reduction(max : lost_face) num_threads(threads) schedule(static)
        for (std::size_t j = 0; j < n + 1; ++j) {
            const Cell<N>& L = cfg.scheme == Scheme::MusclMinmod ? qp[j + 1] : q[j + 1];
            const Cell<N>& R = cfg.scheme == Scheme::MusclMinmod ? qm[j + 2] : q[j + 2];
            const auto fl = sys.flux(L), fr = sys.flux(R);
            const double sl = sys.speed(L), sr = sys.speed(R);
            if (!(sl >= 0.0) || !(sr >= 0.0)) lost_face = 1;
            const double a = std::max(sl, sr);
            for (std::size_t k = 0; k < N; ++k) F[j][k] = 0.5 * (fl[k] + fr[k]) - 0.5 * a * (R[k] - L[k]);
        }
        if (lost_face)
            throw Error(ErrorCode::HyperbolicityLoss, "non-positive squared wave speed at a reconstructed state",
                        coord_locus(coord));

#pragma omp parallel for num_threads(threads) schedule(static)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < N; ++k) q[i + 2][k] -= nu * (F[i + 1][k] - F[i][k]);

        coord = dt >= remaining ? cfg.end : coord + dt;
        ++step_index;

        fill_ghosts(q, n, bc);
        StepDiagnostics d;
        d.coordinate = coord;
        d.step = dt;
        d.max_speed = smax;
        measure(q, n, h, bc, d.max_gradient, d.total_variation);
        for (const auto& c : q)
            for (double v : c)
                if (!std::isfinite(v))
                    throw Error(ErrorCode::BlowupDetected, "non-finite state", coord_locus(coord));

        const bool tripped = traj.initial_max_gradient > 0.0 &&
                             d.max_gradient > cfg.blowup_factor * traj.initial_max_gradient;
        if (tripped && !traj.blowup_coordinate) traj.blowup_coordinate = coord;
        if (tripped && dt < 1e-9 * span && coord < cfg.end)
            throw Error(ErrorCode::BlowupDetected, "gradient growth with collapsing CFL step",
                        coord_locus(coord));
        traj.diagnostics.push_back(std::move(d));

        if (tripped && cfg.stop_at_blowup) stopped = true;
        const bool last = coord >= cfg.end || stopped;
        if (last || (cfg.snapshot_stride > 0 && step_index % cfg.snapshot_stride == 0))
            traj.snapshots.push_back({coord, to_state()});
    }
    traj.steps = step_index;
    return traj;
}

}  // namespace

void Grid1D::validate() const {
    if (n < 8) throw Error(ErrorCode::InvalidArgument, "grid needs at least 8 cells");
    if (!(b > a)) throw Error(ErrorCode::InvalidArgument, "grid domain must satisfy b > a");
}

void SimulationConfig::validate() const {
    if (!(cfl > 0.0 && cfl <= 0.9)) throw Error(ErrorCode::InvalidArgument, "cfl must lie in (0, 0.9]");
    if (!(end > start)) throw Error(ErrorCode::InvalidArgument, "end coordinate must exceed start");
    if (!(blowup_factor > 1.0)) throw Error(ErrorCode::InvalidArgument, "blowup factor must exceed 1");
}

std::string to_string(Scheme s) { return s == Scheme::LaxFriedrichs ? "lax_friedrichs" : "muscl_minmod"; }
std::string to_string(Boundary b) { return b == Boundary::Periodic ? "periodic" : "outflow"; }

const std::vector<double>& StateGrid::field(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return fields[i];
    throw Error(ErrorCode::InvalidArgument, "no field named " + name);
}

std::vector<double>& StateGrid::field(const std::string& name) {
    return const_cast<std::vector<double>&>(static_cast<const StateGrid&>(*this).field(name));
}

StateGrid StateGrid::sample(const Grid1D& grid, std::vector<std::string> names,
                            const std::function<std::vector<double>(double)>& f) {
    StateGrid s{grid, std::move(names), {}};
    s.fields.assign(s.names.size(), std::vector<double>(grid.n));
    for (std::size_t i = 0; i < grid.n; ++i) {
        const auto v = f(grid.center(i));
        if (v.size() != s.names.size())
            throw Error(ErrorCode::InvalidArgument, "sampler returned the wrong number of fields");
        for (std::size_t k = 0; k < v.size(); ++k) s.fields[k][i] = v[k];
    }
    return s;
}

std::array<double, 2> full_squared_speeds(const ShearModulus& m, double U, double V) {
    const double s = U * U + V * V;
    const double qt = m.q(s) / m.rho;
    const double dqt = m.q.derivative(s) / m.rho;
    return {qt, qt + 2.0 * dqt * s};
}

Trajectory evolve_full(const ShearModulus& m, const StateGrid& init, const SimulationConfig& cfg) {
    if (!(m.rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "density must be positive");
    StateGrid ordered{init.grid, {"U", "M", "V", "N"}, {}};
    for (const auto& name : ordered.names) ordered.fields.push_back(init.field(name));
    // The analytic fast-speed bound is exact when Q' is analytic; otherwise pad it.
    const FullSystem sys{m, m.q.has_analytic_derivative() ? 1.0 : 1.2};
    return run(sys, ordered, cfg);
}

Trajectory evolve_asymptotic(double beta, const StateGrid& init, const SimulationConfig& cfg) {
    StateGrid ordered{init.grid, {"U", "V"}, {init.field("U"), init.field("V")}};
    return run(AsymptoticSystem{beta}, ordered, cfg);
}

Trajectory evolve_scalar(double beta, const StateGrid& rho0, const SimulationConfig& cfg) {
    StateGrid ordered{rho0.grid, {"rho"}, {rho0.field("rho")}};
    for (double r : ordered.fields[0])
        if (!(r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "rho0 must be nonnegative");
    return run(ScalarSystem{beta}, ordered, cfg);
}

double breaking_estimate(double beta, const ProfileFunction& rho0, std::span<const double> tau_grid) {
    double rate = 0.0;
    for (double tau : tau_grid) rate = std::max(rate, 6.0 * beta * rho0(tau) * rho0.derivative(tau));
    if (!(rate > 0.0)) return std::numeric_limits<double>::infinity();
    return 1.0 / rate;
}

double cfl_step(double max_speed, double h, double cfl, double remaining) {
    if (!(max_speed > 0.0)) return remaining;
    return std::min(cfl * h / max_speed, remaining);
}

void set_thread_count(int n) {
    g_threads = std::max(1, n);
#ifdef _OPENMP
    omp_set_num_threads(g_threads);
#endif
}

int thread_count() { return g_threads; }

}  // namespace shearwave
