#include "shearwave/constitutive.hpp"

#include "shearwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace shearwave {

namespace {

std::string fmt_point(double u, double v) {
    std::ostringstream os;
    os.precision(17);
    os << "(u=" << u << ", v=" << v << ")";
    return os.str();
}

}  // namespace

ShearModulus ShearModulus::mooney_rivlin(double mu, double rho) {
    ScalarFunction q([mu](double) { return mu; }, [](double) { return 0.0; },
                     [](double) { return 0.0; }, "mooney_rivlin");
    return {std::move(q), rho};
}

ShearModulus ShearModulus::cubic(double mu0, double mu1, double rho) {
    ScalarFunction q([=](double s) { return mu0 + mu1 * s; }, [=](double) { return mu1; },
                     [](double) { return 0.0; }, "cubic");
    return {std::move(q), rho};
}

ShearModulus ShearModulus::power(double mu, double n, double rho) {
    if (n == 0.0) throw Error(ErrorCode::InvalidArgument, "power-law exponent n must be nonzero");
    ScalarFunction q(
        [=](double s) { return mu * std::pow(1.0 + s / n, n - 1.0); },
        [=](double s) { return mu * (n - 1.0) / n * std::pow(1.0 + s / n, n - 2.0); },
        [=](double s) { return mu * (n - 1.0) * (n - 2.0) / (n * n) * std::pow(1.0 + s / n, n - 3.0); },
        "power");
    return {std::move(q), rho};
}

ShearModulus ShearModulus::polynomial(std::vector<double> coeffs, double rho) {
    return {ScalarFunction::polynomial(std::move(coeffs)), rho};
}

double eval_Q(const ShearModulus& m, double s) {
    if (!(s >= 0.0)) throw Error(ErrorCode::InvalidArgument, "Q evaluated at negative strain invariant");
    const double q = m.q(s);
    if (!(q > 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "Q(" << s << ") = " << q;
        throw Error(ErrorCode::NonPositiveModulus, os.str(), "s=" + std::to_string(s));
    }
    return q;
}

double eval_dQ(const ShearModulus& m, double s) { return m.q.derivative(s); }

TempleFlux TempleFlux::constant(double mu) {
    return {BivariateFunction([mu](double, double) { return mu; },
                              [](double, double) { return std::array<double, 2>{0.0, 0.0}; },
                              [](double, double) { return std::array<double, 3>{0.0, 0.0, 0.0}; },
                              "constant")};
}

TempleFlux TempleFlux::product() {
    return {BivariateFunction([](double u, double v) { return u * v; },
                              [](double u, double v) { return std::array<double, 2>{v, u}; },
                              [](double, double) { return std::array<double, 3>{0.0, 1.0, 0.0}; },
                              "product")};
}

TempleFlux TempleFlux::ratio() {
    return {BivariateFunction(
        [](double u, double v) { return u / v; },
        [](double u, double v) { return std::array<double, 2>{1.0 / v, -u / (v * v)}; },
        [](double u, double v) {
            return std::array<double, 3>{0.0, -1.0 / (v * v), 2.0 * u / (v * v * v)};
        },
        "ratio")};
}

TempleFlux TempleFlux::radial() { return asymptotic(1.0); }

TempleFlux TempleFlux::asymptotic(double beta) {
    return {BivariateFunction(
        [beta](double u, double v) { return beta * (u * u + v * v); },
        [beta](double u, double v) { return std::array<double, 2>{2.0 * beta * u, 2.0 * beta * v}; },
        [beta](double, double) { return std::array<double, 3>{2.0 * beta, 0.0, 2.0 * beta}; },
        beta == 1.0 ? "radial" : "asymptotic")};
}

TempleFlux TempleFlux::product_form(ScalarFunction s) {
    return {BivariateFunction(
        [s](double u, double v) { return s(u * v); },
        [s](double u, double v) {
            const double d = s.derivative(u * v);
            return std::array<double, 2>{d * v, d * u};
        },
        [s](double u, double v) {
            const double w = u * v;
            const double d = s.derivative(w), d2 = s.second_derivative(w);
            return std::array<double, 3>{d2 * v * v, d2 * w + d, d2 * u * u};
        },
        "product_form(" + s.label() + ")")};
}

TempleFlux TempleFlux::ratio_form(ScalarFunction s) {
    return {BivariateFunction(
        [s](double u, double v) { return s(u / v); },
        [s](double u, double v) {
            const double d = s.derivative(u / v);
            return std::array<double, 2>{d / v, -d * u / (v * v)};
        },
        [s](double u, double v) {
            const double r = u / v;
            const double d = s.derivative(r), d2 = s.second_derivative(r);
            const double ru = 1.0 / v, rv = -u / (v * v);
            const double ruv = -1.0 / (v * v), rvv = 2.0 * u / (v * v * v);
            return std::array<double, 3>{d2 * ru * ru, d2 * ru * rv + d * ruv, d2 * rv * rv + d * rvv};
        },
        "ratio_form(" + s.label() + ")")};
}

TempleFlux TempleFlux::polynomial(std::vector<std::vector<double>> coeffs) {
    auto term = [](double x, std::size_t k, int order) {
        if (order == 0) return std::pow(x, static_cast<double>(k));
        if (order == 1) return k >= 1 ? k * std::pow(x, static_cast<double>(k) - 1.0) : 0.0;
        return k >= 2 ? k * (k - 1.0) * std::pow(x, static_cast<double>(k) - 2.0) : 0.0;
    };
    auto eval = [coeffs, term](double u, double v, int du, int dv) {
        double sum = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            for (std::size_t j = 0; j < coeffs[i].size(); ++j)
                if (coeffs[i][j] != 0.0) sum += coeffs[i][j] * term(u, i, du) * term(v, j, dv);
        return sum;
    };
    return {BivariateFunction(
        [eval](double u, double v) { return eval(u, v, 0, 0); },
        [eval](double u, double v) { return std::array<double, 2>{eval(u, v, 1, 0), eval(u, v, 0, 1)}; },
        [eval](double u, double v) {
            return std::array<double, 3>{eval(u, v, 2, 0), eval(u, v, 1, 1), eval(u, v, 0, 2)};
        },
        "poly2")};
}

double eval_P(const TempleFlux& f, double u, double v) {
    const double p = f(u, v);
    if (!(p > 0.0))
        throw Error(ErrorCode::NonPositiveModulus, "P" + fmt_point(u, v) + " <= 0", fmt_point(u, v));
    return p;
}

std::string to_string(SpeedConvention c) {
    return c == SpeedConvention::Speed ? "c0=sqrt(mu0/rho)" : "c0=mu0/rho";
}

double beta_from_moduli(double mu0, double mu1, double rho, SpeedConvention convention) {
    if (!(mu0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "mu0 must be positive");
    if (!(rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "rho must be positive");
    const double c1 = mu1 / rho;
    const double c0 = convention == SpeedConvention::Speed ? std::sqrt(mu0 / rho) : mu0 / rho;
    return c1 / (2.0 * c0 * c0);
}

AsymptoticCoefficients AsymptoticCoefficients::from_moduli(double mu0, double mu1, double rho,
                                                           SpeedConvention convention) {
    return {beta_from_moduli(mu0, mu1, rho, convention), Derivation{mu0, mu1, rho, convention}};
}

double solve_level_set(const TempleFlux& f, double a, double u, Interval v_bracket) {
    double lo = std::min(v_bracket.lo, v_bracket.hi);
    double hi = std::max(v_bracket.lo, v_bracket.hi);
    const double tol = 1e-12 * std::max(1.0, std::abs(a));
    auto g = [&](double v) { return f(u, v) - a; };

    double glo = g(lo), ghi = g(hi);
    if (!std::isfinite(glo) || !std::isfinite(ghi))
        throw Error(ErrorCode::NoBracket, "level-set function not finite at bracket ends", fmt_point(u, lo));
    if (std::abs(glo) <= tol) return lo;
    if (std::abs(ghi) <= tol) return hi;
    if ((glo > 0.0) == (ghi > 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "P(u, v) - a has the same sign at v=" << lo << " and v=" << hi;
        throw Error(ErrorCode::NoBracket, os.str(), fmt_point(u, lo));
    }
    // Orient so that g(lo) < 0 < g(hi).
    const bool increasing = glo < 0.0;

    double v = 0.5 * (lo + hi);
    double dx_old = hi - lo, dx = dx_old;
    double gv = g(v);
    double dg = f.gradient(u, v)[1];
    for (int it = 0; it < 100; ++it) {
        if (std::abs(gv) <= tol) return v;
        const bool newton_leaves = ((v - hi) * dg - gv) * ((v - lo) * dg - gv) > 0.0;
        const bool newton_slow = std::abs(2.0 * gv) > std::abs(dx_old * dg);
        dx_old = dx;
        if (newton_leaves || newton_slow || dg == 0.0) {
            dx = 0.5 * (hi - lo);
            v = lo + dx;
        } else {
            dx = gv / dg;
            v -= dx;
        }
        gv = g(v);
        dg = f.gradient(u, v)[1];
        if ((gv < 0.0) == increasing)
            lo = v;
        else
            hi = v;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v))) {
            const double glo2 = std::abs(g(lo)), ghi2 = std::abs(g(hi));
            if (std::abs(gv) <= std::min(glo2, ghi2)) return v;
            return glo2 < ghi2 ? lo : hi;
        }
    }
    if (std::abs(gv) <= tol) return v;
    throw Error(ErrorCode::NoConvergence, "level-set root finder exceeded 100 iterations", fmt_point(u, v));
}

}  // namespace shearwave
