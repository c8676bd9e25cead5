#include "shearwave/exact.hpp"

#include "shearwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace shearwave {

namespace {

std::string locus(const char* a, double x, const char* b, double y) {
    std::ostringstream os;
    os.precision(17);
    os << a << "=" << x << ", " << b << "=" << y;
    return os.str();
}

}  // namespace

double carroll_dispersion(const ShearModulus& m, double amplitude, double wavenumber) {
    if (!(m.rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "density must be positive");
    const double q = eval_Q(m, amplitude * amplitude);
    return wavenumber * std::sqrt(q / m.rho);
}

CarrollWave::CarrollWave(const ShearModulus& m, double amplitude, double wavenumber, int sign)
    : CarrollWave(m, amplitude, wavenumber, carroll_dispersion(m, amplitude, wavenumber), sign) {}

CarrollWave::CarrollWave(const ShearModulus& m, double amplitude, double wavenumber, double omega,
                         int sign)
    : amplitude_(amplitude), k_(wavenumber), omega_(omega), sign_(sign) {
    if (!(amplitude > 0.0) || !(wavenumber > 0.0) || !(omega > 0.0))
        throw Error(ErrorCode::InvalidArgument, "Carroll wave needs A, k, omega > 0");
    if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidArgument, "polarization sign must be +1 or -1");
    const double lhs = m.rho * omega * omega;
    const double rhs = wavenumber * wavenumber * eval_Q(m, amplitude * amplitude);
    if (std::abs(lhs - rhs) > 1e-12 * std::abs(rhs))
        throw Error(ErrorCode::InvalidArgument, "dispersion relation rho w^2 = k^2 Q(A^2) violated");
}

StrainState eval_carroll(const CarrollWave& w, double x, double t) {
    const double phase = w.wavenumber() * x - w.omega() * t;
    return {w.amplitude() * std::cos(phase), w.sign() * w.amplitude() * std::sin(phase)};
}

FullState eval_carroll_full(const CarrollWave& w, double x, double t) {
    const auto s = eval_carroll(w, x, t);
    // Any g(kx - wt) has g_t = -(w/k) g_x, and U_t = M_x.
    const double c = w.phase_speed();
    return {s.U, s.V, -c * s.U, -c * s.V};
}

double GeneralizedCarroll::speed() const {
    return std::sqrt(eval_Q(modulus, amplitude * amplitude) / modulus.rho);
}

StrainState eval_generalized_carroll(const GeneralizedCarroll& g, double x, double t) {
    const double theta = g.profile(x + g.direction * g.speed() * t);
    return {g.amplitude * std::cos(theta), g.polarization * g.amplitude * std::sin(theta)};
}

FullState eval_generalized_carroll_full(const GeneralizedCarroll& g, double x, double t) {
    const double c = g.speed();
    const auto s = eval_generalized_carroll(g, x, t);
    return {s.U, s.V, g.direction * c * s.U, g.direction * c * s.V};
}

FullState eval_dalembert(const DalembertSolution& d, double x, double t) {
    const double c = d.speed;
    // Riemann variables M + cU move left, M - cU move right.
    const double xl = x + c * t, xr = x - c * t;
    const double wp_u = d.M0(xl) + c * d.U0(xl), wm_u = d.M0(xr) - c * d.U0(xr);
    const double wp_v = d.N0(xl) + c * d.V0(xl), wm_v = d.N0(xr) - c * d.V0(xr);
    return {(wp_u - wm_u) / (2.0 * c), (wp_v - wm_v) / (2.0 * c), 0.5 * (wp_u + wm_u),
            0.5 * (wp_v + wm_v)};
}

StrainState eval_asymptotic_linear(double beta, double amplitude, const ProfileFunction& theta,
                                   double X, double tau) {
    const double xi = beta * amplitude * amplitude * X + tau;
    const double th = theta(xi);
    return {amplitude * std::cos(th), amplitude * std::sin(th)};
}

double eval_simple_wave(double beta, const ProfileFunction& phi, double X, double tau,
                        double rho_guess) {
    auto residual = [&](double r) { return r - phi(tau + 3.0 * beta * X * r * r); };
    auto slope = [&](double r) { return 1.0 - 6.0 * beta * X * r * phi.derivative(tau + 3.0 * beta * X * r * r); };

    double r = rho_guess;
    double g = residual(r);
    for (int it = 0; it < 100; ++it) {
        const double tol = 1e-12 * std::max(1.0, std::abs(r));
        if (std::abs(g) <= tol) {
            // Past the fold the characteristic through (X, tau) has crossed its
            // neighbours and the smooth branch no longer exists.
            if (slope(r) <= 0.0)
                throw Error(ErrorCode::NoConvergence, "simple wave queried past breaking",
                            locus("X", X, "tau", tau));
            return r;
        }
        const double dg = slope(r);
        if (dg == 0.0 || !std::isfinite(dg))
            throw Error(ErrorCode::NoConvergence, "simple wave Newton hit a stationary point",
                        locus("X", X, "tau", tau));
        double step = g / dg;
        bool accepted = false;
        for (int halving = 0; halving <= 20; ++halving) {
            const double trial = r - step;
            const double gt = residual(trial);
            if (std::isfinite(gt) && std::abs(gt) < std::abs(g)) {
                r = trial;
                g = gt;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted)
            throw Error(ErrorCode::NoConvergence, "simple wave Newton step could not reduce the residual",
                        locus("X", X, "tau", tau));
    }
    throw Error(ErrorCode::NoConvergence, "simple wave Newton exceeded 100 iterations",
                locus("X", X, "tau", tau));
}

double eval_simple_wave(double beta, const ProfileFunction& phi, double X, double tau) {
    double r = phi(tau);
    if (X == 0.0) return r;
    // March from X = 0, halving the continuation step when Newton fails.
    double x_done = 0.0;
    double dx = X / 16.0;
    int refinements = 0;
    while (x_done != X) {
        double x_next = x_done + dx;
        if ((dx > 0.0 && x_next > X) || (dx < 0.0 && x_next < X)) x_next = X;
        try {
            r = eval_simple_wave(beta, phi, x_next, tau, r);
            x_done = x_next;
        } catch (const Error& e) {
            if (++refinements > 20) throw;
            dx *= 0.5;
        }
    }
    return r;
}

HodographPoint hodograph_forward(const HodographData& h, double beta, double theta, double rho) {
    if (rho == 0.0 || beta == 0.0)
        throw Error(ErrorCode::DivisionByZero, "hodograph map needs rho != 0 and beta != 0",
                    locus("theta", theta, "rho", rho));
    const double s3 = h.s3(theta), s4 = h.s4(rho), ds4 = h.s4.derivative(rho);
    return {s3 / (2.0 * beta * rho * rho * rho) - ds4 / (2.0 * beta * rho),
            -1.5 * s3 / rho - s4 + 0.5 * rho * ds4};
}

std::array<double, 4> hodograph_jacobian(const HodographData& h, double beta, double theta, double rho) {
    if (rho == 0.0 || beta == 0.0)
        throw Error(ErrorCode::DivisionByZero, "hodograph map needs rho != 0 and beta != 0",
                    locus("theta", theta, "rho", rho));
    const double s3 = h.s3(theta), ds3 = h.s3.derivative(theta);
    const double ds4 = h.s4.derivative(rho), d2s4 = h.s4.second_derivative(rho);
    const double r2 = rho * rho, r3 = r2 * rho, r4 = r3 * rho;
    return {ds3 / (2.0 * beta * r3),
            -1.5 * s3 / (beta * r4) - d2s4 / (2.0 * beta * rho) + ds4 / (2.0 * beta * r2),
            -1.5 * ds3 / rho,
            1.5 * s3 / r2 - 0.5 * ds4 + 0.5 * rho * d2s4};
}

PolarState hodograph_invert(const HodographData& h, double beta, double X, double tau, PolarState seed) {
    double theta = seed.theta, rho = seed.rho;
    auto residual = [&](double th, double r) {
        const auto p = hodograph_forward(h, beta, th, r);
        return std::array<double, 2>{p.X - X, p.tau - tau};
    };
    auto norm = [](const std::array<double, 2>& a) { return std::max(std::abs(a[0]), std::abs(a[1])); };

    auto res = residual(theta, rho);
    for (int it = 0; it < 100; ++it) {
        if (norm(res) <= 1e-10) return {rho, theta};
        const auto J = hodograph_jacobian(h, beta, theta, rho);
        const double det = J[0] * J[3] - J[1] * J[2];
        const double det_scale = std::abs(J[0] * J[3]) + std::abs(J[1] * J[2]);
        if (!(std::abs(det) > 1e-12 * det_scale) || !std::isfinite(det))
            throw Error(ErrorCode::SingularJacobian, "hodograph Jacobian is singular (fold locus)",
                        locus("theta", theta, "rho", rho));
        double dth = (J[3] * res[0] - J[1] * res[1]) / det;
        double dr = (-J[2] * res[0] + J[0] * res[1]) / det;
        bool accepted = false;
        for (int halving = 0; halving <= 20; ++halving) {
            const double th_t = theta - dth, r_t = rho - dr;
            if (r_t > 0.0) {
                const auto res_t = residual(th_t, r_t);
                if (std::isfinite(res_t[0]) && std::isfinite(res_t[1]) && norm(res_t) < norm(res)) {
                    theta = th_t;
                    rho = r_t;
                    res = res_t;
                    accepted = true;
                    break;
                }
            }
            dth *= 0.5;
            dr *= 0.5;
        }
        if (!accepted)
            throw Error(ErrorCode::NoConvergence, "hodograph Newton could not reduce the residual",
                        locus("X", X, "tau", tau));
    }
    if (norm(res) <= 1e-10) return {rho, theta};
    throw Error(ErrorCode::NoConvergence, "hodograph Newton exceeded 100 iterations", locus("X", X, "tau", tau));
}

PolarField hodograph_field(const HodographData& h, double beta, const Lattice& lattice, PolarState seed) {
    PolarField out{Sheet(lattice), Sheet(lattice)};
    PolarState row_seed = seed;
    for (std::size_t r = 0; r < lattice.evolution.count; ++r) {
        const double X = lattice.evolution.at(r);
        PolarState s = hodograph_invert(h, beta, X, lattice.space.at(0), row_seed);
        row_seed = s;
        for (std::size_t c = 0; c < lattice.space.count; ++c) {
            if (c > 0) s = hodograph_invert(h, beta, X, lattice.space.at(c), s);
            out.theta(r, c) = s.theta;
            out.rho(r, c) = s.rho;
        }
    }
    return out;
}

StrainState eval_overdetermined(const OverdeterminedSolution& s, double x, double t) {
    if (!(s.level > 0.0)) throw Error(ErrorCode::InvalidArgument, "level-set value A must be positive");
    const double U = s.profile(x + s.direction * std::sqrt(s.level) * t);
    return {U, solve_level_set(s.flux, s.level, U, s.v_bracket)};
}

double SeparableSolution::u(double x, std::size_t i) const { return phi_.at(i) * std::exp(k_ * x); }
double SeparableSolution::v(double x, std::size_t i) const { return phi_.at(i) * std::exp(-k_ * x); }

SeparableSolution eval_separable(const TempleFlux& f, double k, double phi0, double dphi0,
                                 std::span<const double> t_grid) {
    if (t_grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty time grid");
    const double k2 = k * k;
    // For P = P(uv) and u = phi e^{kx}, v = phi e^{-kx}: P(u, v) = P(phi, phi).
    auto accel = [&](double p) { return k2 * f(p, p) * p; };

    std::vector<double> t(t_grid.begin(), t_grid.end()), phi{phi0}, dphi{dphi0};
    phi.reserve(t.size());
    dphi.reserve(t.size());
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double dt = t[i] - t[i - 1];
        if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time grid must be increasing");
        const double y = phi.back(), z = dphi.back();
        const double k1y = z, k1z = accel(y);
        const double k2y = z + 0.5 * dt * k1z, k2z = accel(y + 0.5 * dt * k1y);
        const double k3y = z + 0.5 * dt * k2z, k3z = accel(y + 0.5 * dt * k2y);
        const double k4y = z + dt * k3z, k4z = accel(y + dt * k3y);
        const double yn = y + dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        const double zn = z + dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
        if (!std::isfinite(yn) || !std::isfinite(zn))
            throw Error(ErrorCode::StepFailure, "phi left the evaluable domain", "t=" + std::to_string(t[i]));
        phi.push_back(yn);
        dphi.push_back(zn);
    }
    return {std::move(t), std::move(phi), std::move(dphi), k};
}

PotentialField potential_phi(const Sheet& rho, double beta, double tolerance_factor) {
    const auto& lat = rho.lattice();
    const std::size_t nr = rho.rows(), nc = rho.cols();
    if (nr < 2 || nc < 2) throw Error(ErrorCode::InvalidArgument, "potential needs at least a 2x2 lattice");
    const double dX = lat.evolution.step, dtau = lat.space.step;

    Sheet flux(lat);
    for (std::size_t i = 0; i < flux.values().size(); ++i) {
        const double r = rho.values()[i];
        flux.values()[i] = beta * r * r * r;
    }

    // Returned potential: X-offsets along the first column, then tau-quadrature per row.
    PotentialField out{Sheet(lat)};
    Sheet& phi = out.phi;
    for (std::size_t r = 1; r < nr; ++r) phi(r, 0) = phi(r - 1, 0) + 0.5 * dX * (flux(r - 1, 0) + flux(r, 0));
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 1; c < nc; ++c) phi(r, c) = phi(r, c - 1) + 0.5 * dtau * (rho(r, c - 1) + rho(r, c));

    // Alternate path: tau-quadrature on the first row, then X-quadrature per column.
    Sheet alt(lat);
    for (std::size_t c = 1; c < nc; ++c) alt(0, c) = alt(0, c - 1) + 0.5 * dtau * (rho(0, c - 1) + rho(0, c));
    for (std::size_t r = 1; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) alt(r, c) = alt(r - 1, c) + 0.5 * dX * (flux(r - 1, c) + flux(r, c));

    double disc = 0.0;
    for (std::size_t i = 0; i < phi.values().size(); ++i)
        disc = std::max(disc, std::abs(phi.values()[i] - alt.values()[i]));
    out.path_discrepancy = disc;

    double cross = 0.0;
    for (std::size_t r = 1; r + 1 < nr; ++r)
        for (std::size_t c = 1; c + 1 < nc; ++c) {
            const double dr = (rho(r + 1, c) - rho(r - 1, c)) / (2.0 * dX);
            const double df = (flux(r, c + 1) - flux(r, c - 1)) / (2.0 * dtau);
            cross = std::max(cross, std::abs(dr - df));
        }
    out.cross_residual = cross;

    // Trapezoid error is bounded by (L h^2 / 12) max|f''|; estimate f'' from the data.
    double curv = 0.0, mag = 0.0;
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) {
            mag = std::max({mag, std::abs(rho(r, c)), std::abs(flux(r, c))});
            if (c > 0 && c + 1 < nc)
                curv = std::max(curv, std::abs(rho(r, c + 1) - 2.0 * rho(r, c) + rho(r, c - 1)) / (dtau * dtau));
            if (r > 0 && r + 1 < nr)
                curv = std::max(curv, std::abs(flux(r + 1, c) - 2.0 * flux(r, c) + flux(r - 1, c)) / (dX * dX));
        }
    const double extent = std::abs(lat.evolution.last() - lat.evolution.start) +
                          std::abs(lat.space.last() - lat.space.start);
    out.tolerance = tolerance_factor * (dX * dX + dtau * dtau) * extent * curv +
                    1e-12 * std::max(1.0, mag * extent);
    if (out.path_discrepancy > out.tolerance) {
        std::ostringstream os;
        os << "quadrature paths disagree by " << out.path_discrepancy << " (tolerance " << out.tolerance << ")";
        throw Error(ErrorCode::InconsistentField, os.str());
    }
    return out;
}

}  // namespace shearwave
