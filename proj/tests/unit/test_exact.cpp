#include "doctest.h"
#include "oracles.hpp"

#include "shearwave/errors.hpp"
#include "shearwave/exact.hpp"

#include <cmath>
#include <numbers>

using namespace shearwave;
using std::numbers::pi;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("carroll_dispersion examples") {
    CHECK(carroll_dispersion(ShearModulus::mooney_rivlin(1.0), 0.7, 2.0) == doctest::Approx(2.0));
    CHECK(carroll_dispersion(ShearModulus::cubic(1.0, 0.5), 1.0, 1.0) == doctest::Approx(1.224744871).epsilon(1e-9));
    CHECK(carroll_dispersion(ShearModulus::cubic(1.0, 1.0, 4.0), 2.0, 3.0) ==
          doctest::Approx(3.354101966).epsilon(1e-9));
    CHECK(code_of([] { carroll_dispersion(ShearModulus::cubic(1.0, -1.0), 2.0, 1.0); }) ==
          ErrorCode::NonPositiveModulus);
}

TEST_CASE("CarrollWave rejects an omega off the dispersion relation") {
    const auto m = ShearModulus::cubic(1.0, 0.5);
    CHECK_NOTHROW(CarrollWave(m, 1.0, 1.0, std::sqrt(1.5), 1));
    CHECK(code_of([&] { CarrollWave(m, 1.0, 1.0, 1.3, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("eval_carroll examples") {
    const auto m = ShearModulus::mooney_rivlin(1.0);
    const CarrollWave w(m, 1.0, 1.0, 1.0, +1);
    auto s = eval_carroll(w, 0.0, 0.0);
    CHECK(s.U == doctest::Approx(1.0));
    CHECK(s.V == doctest::Approx(0.0));
    s = eval_carroll(w, pi / 2, 0.0);
    CHECK(s.U == doctest::Approx(0.0));
    CHECK(s.V == doctest::Approx(1.0));
    const CarrollWave w2(ShearModulus::mooney_rivlin(1.0), 2.0, 1.0, 1.0, -1);
    s = eval_carroll(w2, 0.0, pi / 2);
    CHECK(s.U == doctest::Approx(0.0));
    CHECK(s.V == doctest::Approx(2.0));
}

TEST_CASE("eval_carroll_full velocities are time derivatives of the displacement") {
    const auto m = ShearModulus::cubic(1.0, 0.5);
    const CarrollWave w(m, 0.8, 1.5);
    // U = u_x, M = u_t: M_x = U_t must hold; check against differences in t.
    const double x = 0.37, t = 0.91, h = 1e-5;
    const auto s = eval_carroll_full(w, x, t);
    const double Ut = (eval_carroll(w, x, t + h).U - eval_carroll(w, x, t - h).U) / (2 * h);
    const double Mx = (eval_carroll_full(w, x + h, t).M - eval_carroll_full(w, x - h, t).M) / (2 * h);
    CHECK(Ut == doctest::Approx(Mx).epsilon(1e-7));
    const double Vt = (eval_carroll(w, x, t + h).V - eval_carroll(w, x, t - h).V) / (2 * h);
    const double Nx = (eval_carroll_full(w, x + h, t).N - eval_carroll_full(w, x - h, t).N) / (2 * h);
    CHECK(Vt == doctest::Approx(Nx).epsilon(1e-7));
    // M = -(omega/k) U for a right-moving harmonic wave.
    CHECK(s.M == doctest::Approx(-w.phase_speed() * s.U));
}

TEST_CASE("generalized Carroll with a linear profile is the Carroll wave") {
    const auto m = ShearModulus::cubic(1.0, 0.5);
    const CarrollWave w(m, 1.3, 2.0);
    const GeneralizedCarroll g{m, 1.3, ProfileFunction::linear(2.0), -1, +1};
    oracle::Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const double x = rng.uniform(-5, 5), t = rng.uniform(0, 5);
        const auto a = eval_carroll(w, x, t);
        const auto b = eval_generalized_carroll(g, x, t);
        CHECK(std::abs(a.U - b.U) <= 1e-14 * 8);
        CHECK(std::abs(a.V - b.V) <= 1e-14 * 8);
    }
}

TEST_CASE("generalized Carroll examples") {
    const auto m = ShearModulus::mooney_rivlin(1.0);
    const GeneralizedCarroll c{m, 1.0, ProfileFunction::constant(0.4)};
    const auto s = eval_generalized_carroll(c, 3.0, 7.0);
    CHECK(s.U == doctest::Approx(std::cos(0.4)));
    CHECK(s.V == doctest::Approx(std::sin(0.4)));
    const GeneralizedCarroll q{m, 1.0, ProfileFunction::polynomial({0, 0, 1})};
    const auto r = eval_generalized_carroll(q, 1.0, 1.0);
    CHECK(r.U == doctest::Approx(1.0));
    CHECK(r.V == doctest::Approx(0.0));
}

TEST_CASE("d'Alembert solution satisfies the linear first-order system") {
    const DalembertSolution d{2.0, ProfileFunction::sine(0.3, 1.0), ProfileFunction::cosine(0.2, 2.0),
                              ProfileFunction::sine(0.1, 3.0, 0.05), ProfileFunction::constant(0.4)};
    const auto s0 = eval_dalembert(d, 0.4, 0.0);
    CHECK(s0.U == doctest::Approx(0.3 * std::sin(0.4)));
    CHECK(s0.N == doctest::Approx(0.4));
    const double h = 1e-4, x = 0.7, t = 0.3;
    auto dt = [&](auto get) {
        return (get(eval_dalembert(d, x, t + h)) - get(eval_dalembert(d, x, t - h))) / (2 * h);
    };
    auto dx = [&](auto get) {
        return (get(eval_dalembert(d, x + h, t)) - get(eval_dalembert(d, x - h, t))) / (2 * h);
    };
    const double c2 = 4.0;
    CHECK(dt([](FullState s) { return s.U; }) == doctest::Approx(dx([](FullState s) { return s.M; })).epsilon(1e-6));
    CHECK(dt([](FullState s) { return s.M; }) ==
          doctest::Approx(c2 * dx([](FullState s) { return s.U; })).epsilon(1e-6));
    CHECK(dt([](FullState s) { return s.V; }) == doctest::Approx(dx([](FullState s) { return s.N; })).epsilon(1e-6));
    CHECK(dt([](FullState s) { return s.N; }) ==
          doctest::Approx(c2 * dx([](FullState s) { return s.V; })).epsilon(1e-6));
}

TEST_CASE("eval_asymptotic_linear examples and constant amplitude") {
    const auto id = ProfileFunction::linear(1.0);
    auto s = eval_asymptotic_linear(1.0, 1.0, id, 0.0, 0.0);
    CHECK(s.U == doctest::Approx(1.0));
    CHECK(s.V == doctest::Approx(0.0));
    s = eval_asymptotic_linear(0.5, 2.0, id, 1.0, 1.0);
    CHECK(s.U == doctest::Approx(2.0 * std::cos(3.0)));
    CHECK(s.V == doctest::Approx(2.0 * std::sin(3.0)));

    oracle::Rng rng(4);
    const auto th = ProfileFunction::sine(1.7, 0.8, 0.2);
    for (int i = 0; i < 200; ++i) {
        const double A = rng.uniform(0.1, 3.0);
        const auto p = eval_asymptotic_linear(rng.uniform(-2, 2), A, th, rng.uniform(-3, 3), rng.uniform(-3, 3));
        CHECK(std::abs(p.U * p.U + p.V * p.V - A * A) <= 1e-14 * std::max(1.0, A * A) * 4);
    }
}

TEST_CASE("simple wave examples") {
    const auto phi = ProfileFunction::sine(0.1, 1.0, 1.0);
    CHECK(eval_simple_wave(1.0, phi, 0.0, 0.7) == doctest::Approx(phi(0.7)).epsilon(1e-14));
    CHECK(eval_simple_wave(1.0, ProfileFunction::constant(1.3), 0.4, 2.0) == doctest::Approx(1.3));
    for (double X : {0.05, 0.1, 0.2}) {
        for (double tau : {-1.0, 0.3, 2.0}) {
            const double r = eval_simple_wave(1.0, phi, X, tau);
            CHECK(std::abs(r - phi(tau + 3.0 * X * r * r)) <= 1e-12);
            // independent fixed-point oracle (a contraction at these X)
            CHECK(r == doctest::Approx(oracle::simple_wave_fixed_point(1.0, [&](double x) { return phi(x); }, X, tau))
                           .epsilon(1e-11));
        }
    }
}

TEST_CASE("simple wave solves the scalar law with second-order residual") {
    const auto phi = ProfileFunction::sine(0.1, 1.0, 1.0);
    double prev = 0.0;
    for (double h : {0.02, 0.01, 0.005}) {
        double worst = 0.0;
        for (double tau = -2.0; tau <= 2.0; tau += 0.25) {
            const double X = 0.3;
            auto r = [&](double x, double t) { return eval_simple_wave(1.0, phi, x, t); };
            auto cube = [&](double x, double t) { return std::pow(r(x, t), 3); };
            const double res = (r(X + h, tau) - r(X - h, tau)) / (2 * h) - (cube(X, tau + h) - cube(X, tau - h)) / (2 * h);
            worst = std::max(worst, std::abs(res));
        }
        if (prev > 0) CHECK(std::log2(prev / worst) > 1.8);
        prev = worst;
    }
}

TEST_CASE("simple wave beyond the fold fails to converge") {
    const auto phi = ProfileFunction::sine(0.2, 1.0, 1.0);
    // breaking near X ~ 0.82; far past it the branch cannot be continued
    CHECK(code_of([&] {
              for (double tau = -3.2; tau < 3.2; tau += 0.05) eval_simple_wave(1.0, phi, 3.0, tau);
          }) == ErrorCode::NoConvergence);
}

TEST_CASE("hodograph_forward examples") {
    const HodographData lin{ProfileFunction::constant(0.0), ProfileFunction::linear(1.0)};
    const double beta = 0.8, rho = 1.7;
    auto p = hodograph_forward(lin, beta, 0.3, rho);
    CHECK(p.X == doctest::Approx(-1.0 / (2 * beta * rho)));
    CHECK(p.tau == doctest::Approx(-rho / 2));
    const HodographData th{ProfileFunction::linear(1.0), ProfileFunction::constant(0.0)};
    p = hodograph_forward(th, beta, 0.0, 2.5);
    CHECK(p.X == 0.0);
    CHECK(p.tau == 0.0);
    CHECK(code_of([&] { hodograph_forward(th, beta, 0.1, 0.0); }) == ErrorCode::DivisionByZero);
}

TEST_CASE("inverted hodograph fields solve the polar system") {
    // theta_X = beta rho^2 theta_tau and rho_X = 3 beta rho^2 rho_tau at the seed point
    const HodographData h{ProfileFunction::linear(1.0), ProfileFunction::polynomial({0, 0, 1})};
    const double beta = 1.0;
    const PolarState seed{1.0, 1.5};
    const auto base = hodograph_forward(h, beta, seed.theta, seed.rho);
    auto at = [&](double X, double t) { return hodograph_invert(h, beta, X, t, seed); };
    const double d = 1e-4;
    const auto xp = at(base.X + d, base.tau), xm = at(base.X - d, base.tau);
    const auto tp = at(base.X, base.tau + d), tm = at(base.X, base.tau - d);
    const double thX = (xp.theta - xm.theta) / (2 * d), thT = (tp.theta - tm.theta) / (2 * d);
    const double rX = (xp.rho - xm.rho) / (2 * d), rT = (tp.rho - tm.rho) / (2 * d);
    CHECK(thX == doctest::Approx(beta * seed.rho * seed.rho * thT).epsilon(1e-6));
    CHECK(rX == doctest::Approx(3 * beta * seed.rho * seed.rho * rT).epsilon(1e-6));
}

TEST_CASE("hodograph inversion round-trips on random instances") {
    oracle::Rng rng(9);
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        const double a3 = rng.uniform(0.5, 2.0), b3 = rng.uniform(-0.5, 0.5);
        const double a4 = rng.uniform(0.2, 1.5), b4 = rng.uniform(-0.3, 0.3);
        const HodographData h{ProfileFunction::linear(a3, b3), ProfileFunction::polynomial({0.0, b4, a4})};
        const double beta = rng.uniform(0.3, 2.0);
        const double theta = rng.uniform(0.5, 2.0), rho = rng.uniform(0.6, 1.8);
        const auto J = hodograph_jacobian(h, beta, theta, rho);
        const double det = J[0] * J[3] - J[1] * J[2];
        const double scale = std::abs(J[0] * J[3]) + std::abs(J[1] * J[2]);
        if (std::abs(det) < 1e-3 * scale) continue;  // too close to a fold
        const auto p = hodograph_forward(h, beta, theta, rho);
        const auto s = hodograph_invert(h, beta, p.X, p.tau, {rho, theta});
        CHECK(s.theta == doctest::Approx(theta).epsilon(1e-10));
        CHECK(s.rho == doctest::Approx(rho).epsilon(1e-10));
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("hodograph inversion outside the image fails") {
    // s3 = theta, s4 = rho^2 gives X = theta/(2 beta rho^3) - 1/beta and tau = -3 theta/(2 rho);
    // tau = 1 forces X < 0, so (0, 1) has no preimage.
    const HodographData h{ProfileFunction::linear(1.0), ProfileFunction::polynomial({0, 0, 1})};
    const auto c = code_of([&] { hodograph_invert(h, 1.0, 0.0, 1.0, {1.0, 1.5}); });
    CHECK((c == ErrorCode::SingularJacobian || c == ErrorCode::NoConvergence));
}

TEST_CASE("hodograph jacobian matches differences") {
    const HodographData h{ProfileFunction::sine(1.0, 1.0, 0.5), ProfileFunction::polynomial({0.1, 0.2, 0.7, 0.1})};
    const double beta = 0.6, th = 0.4, r = 1.3, d = 1e-6;
    const auto J = hodograph_jacobian(h, beta, th, r);
    const auto a = hodograph_forward(h, beta, th + d, r), b = hodograph_forward(h, beta, th - d, r);
    const auto c = hodograph_forward(h, beta, th, r + d), e = hodograph_forward(h, beta, th, r - d);
    CHECK(J[0] == doctest::Approx((a.X - b.X) / (2 * d)).epsilon(1e-6));
    CHECK(J[1] == doctest::Approx((c.X - e.X) / (2 * d)).epsilon(1e-6));
    CHECK(J[2] == doctest::Approx((a.tau - b.tau) / (2 * d)).epsilon(1e-6));
    CHECK(J[3] == doctest::Approx((c.tau - e.tau) / (2 * d)).epsilon(1e-6));
}

TEST_CASE("overdetermined solution lies on the level set") {
    const OverdeterminedSolution s{TempleFlux::radial(), 2.0, ProfileFunction::sine(1.0, 1.0), -1, {0.0, 2.0}};
    for (double x : {-1.0, 0.2, 1.1}) {
        const auto p = eval_overdetermined(s, x, 0.4);
        CHECK(p.U == doctest::Approx(std::sin(x - std::sqrt(2.0) * 0.4)));
        CHECK(p.V == doctest::Approx(std::sqrt(2.0 - p.U * p.U)).epsilon(1e-12));
    }
    const OverdeterminedSolution c{TempleFlux::product(), 3.0, ProfileFunction::constant(1.5), +1, {0.5, 5.0}};
    const auto p = eval_overdetermined(c, 0.3, 9.0);
    CHECK(p.U == 1.5);
    CHECK(p.V == doctest::Approx(2.0));
    const OverdeterminedSolution bad{TempleFlux::radial(), 0.5, ProfileFunction::constant(1.0), -1, {0.0, 2.0}};
    CHECK(code_of([&] { eval_overdetermined(bad, 0.0, 0.0); }) == ErrorCode::NoBracket);
}

TEST_CASE("separable solutions") {
    std::vector<double> t;
    for (int i = 0; i <= 1000; ++i) t.push_back(i * 1e-3);
    const auto c = eval_separable(TempleFlux::constant(1.0), 1.0, 1.0, 0.0, t);
    CHECK(std::abs(c.phi().back() - std::cosh(1.0)) < 1e-8);
    CHECK(c.u(0.5, 1000) == doctest::Approx(std::cosh(1.0) * std::exp(0.5)));
    CHECK(c.v(0.5, 1000) == doctest::Approx(std::cosh(1.0) * std::exp(-0.5)));

    const auto z = eval_separable(TempleFlux::product(), 0.0, 0.5, 0.3, t);
    CHECK(z.phi().back() == doctest::Approx(0.8));

    const auto q = eval_separable(TempleFlux::product(), 1.0, 1.0, 0.0, t);
    const double e0 = 0.0 - 0.25;
    for (std::size_t i = 0; i < t.size(); i += 50) {
        const double e = 0.5 * q.dphi()[i] * q.dphi()[i] - 0.25 * std::pow(q.phi()[i], 4);
        CHECK(std::abs(e - e0) < 1e-8);
    }
}

TEST_CASE("separable integration stops when phi leaves the domain") {
    std::vector<double> t;
    for (int i = 0; i <= 400; ++i) t.push_back(i * 0.01);
    // phi'' = phi^3 from phi = 1 blows up near t = 1.854
    CHECK(code_of([&] { eval_separable(TempleFlux::product(), 1.0, 1.0, 0.0, t); }) == ErrorCode::StepFailure);
}

TEST_CASE("potential of a constant density") {
    const Lattice lat{Axis::spanning(0.0, 1.0, 11), Axis::spanning(-1.0, 1.0, 21)};
    const double c = 1.4, beta = 0.7;
    const auto rho = sample(lat, [&](double, double) { return c; });
    const auto p = potential_phi(rho, beta);
    for (std::size_t r = 0; r < 11; ++r)
        for (std::size_t k = 0; k < 21; ++k) {
            const double X = lat.evolution.at(r), tau = lat.space.at(k);
            CHECK(p.phi(r, k) == doctest::Approx(c * (tau + 1.0) + beta * c * c * c * X).epsilon(1e-12));
        }
}

TEST_CASE("potential of the simple wave is path independent to second order") {
    const auto phi = ProfileFunction::sine(0.1, 1.0, 1.0);
    double prev = 0.0;
    Lattice lat{Axis::spanning(0.0, 0.3, 7), Axis::spanning(-1.0, 1.0, 11)};
    for (int level = 0; level < 3; ++level, lat = lat.refined()) {
        const auto rho = sample(lat, [&](double X, double t) { return eval_simple_wave(1.0, phi, X, t); });
        const auto p = potential_phi(rho, 1.0);
        if (prev > 0) CHECK(std::log2(prev / p.cross_residual) > 1.8);
        prev = p.cross_residual;
    }
}

TEST_CASE("potential rejects a field that is not a solution") {
    const Lattice lat{Axis::spanning(0.0, 1.0, 21), Axis::spanning(0.0, 2.0, 41)};
    const auto rho = sample(lat, [](double X, double t) { return 1.0 + 0.3 * std::sin(3 * X) * std::cos(t); });
    CHECK(code_of([&] { potential_phi(rho, 1.0); }) == ErrorCode::InconsistentField);
}

TEST_CASE("polar and strain states round-trip") {
    oracle::Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        const StrainState s{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const auto b = to_strain(to_polar(s));
        CHECK(std::abs(b.U - s.U) <= 1e-14 * 4);
        CHECK(std::abs(b.V - s.V) <= 1e-14 * 4);
    }
}
