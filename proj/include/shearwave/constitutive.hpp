#pragma once

#include "shearwave/functions.hpp"

#include <optional>
#include <string>
#include <vector>

namespace shearwave {

/// Generalized shear modulus Q(s), s = U^2 + V^2, together with the mass
/// density. Positivity is checked lazily at each evaluation point.
struct ShearModulus {
    ScalarFunction q;
    double rho = 1.0;

    /// Q(0)
    double mu0() const { return q(0.0); }
    /// dQ/ds at 0
    double mu1() const { return q.derivative(0.0); }

    static ShearModulus mooney_rivlin(double mu, double rho = 1.0);
    /// Q(s) = mu0 + mu1 s
    static ShearModulus cubic(double mu0, double mu1, double rho = 1.0);
    /// Q(s) = mu (1 + s/n)^(n-1), a Knowles-type power law
    static ShearModulus power(double mu, double n, double rho = 1.0);
    /// Q(s) = sum c_i s^i
    static ShearModulus polynomial(std::vector<double> coeffs, double rho = 1.0);
};

/// Q(s); throws NonPositiveModulus when Q(s) <= 0 and InvalidArgument for s < 0.
double eval_Q(const ShearModulus& m, double s);
/// Q'(s), analytic when available.
double eval_dQ(const ShearModulus& m, double s);

/// Flux function P(u, v) of the Temple class u_t = [P u]_x, v_t = [P v]_x.
struct TempleFlux {
    BivariateFunction p;

    double operator()(double u, double v) const { return p(u, v); }
    std::array<double, 2> gradient(double u, double v) const { return p.gradient(u, v); }
    std::array<double, 3> hessian(double u, double v) const { return p.hessian(u, v); }
    const std::string& label() const { return p.label(); }

    static TempleFlux constant(double mu);
    /// P = u v
    static TempleFlux product();
    /// P = u / v
    static TempleFlux ratio();
    /// P = u^2 + v^2
    static TempleFlux radial();
    /// P = beta (u^2 + v^2), the flux of the asymptotic shear-wave system
    static TempleFlux asymptotic(double beta);
    /// P = S(u v)
    static TempleFlux product_form(ScalarFunction s);
    /// P = S(u / v)
    static TempleFlux ratio_form(ScalarFunction s);
    /// P = sum_{i,j} c[i][j] u^i v^j
    static TempleFlux polynomial(std::vector<std::vector<double>> coeffs);
};

/// P(u, v); throws NonPositiveModulus when P(u, v) <= 0.
double eval_P(const TempleFlux& f, double u, double v);

enum class SpeedConvention {
    /// c0 = sqrt(mu0 / rho): c0 is a wave speed
    Speed,
    /// c0 = mu0 / rho taken literally
    SquaredSpeed,
};

std::string to_string(SpeedConvention c);

struct AsymptoticCoefficients {
    struct Derivation {
        double mu0;
        double mu1;
        double rho;
        SpeedConvention convention;
    };

    double beta = 0.0;
    std::optional<Derivation> derivation;

    static AsymptoticCoefficients from_beta(double beta) { return {beta, std::nullopt}; }
    static AsymptoticCoefficients from_moduli(double mu0, double mu1, double rho,
                                              SpeedConvention convention = SpeedConvention::Speed);
};

/// beta = c1 / (2 c0^2) with c1 = mu1 / rho.
double beta_from_moduli(double mu0, double mu1, double rho,
                        SpeedConvention convention = SpeedConvention::Speed);

struct Interval {
    double lo;
    double hi;
};

/// Solves P(u, v) = a for v inside the bracket (bisection-safeguarded Newton).
/// Throws NoBracket when P(u, .) - a does not change sign on the bracket and
/// NoConvergence after 100 iterations.
double solve_level_set(const TempleFlux& f, double a, double u, Interval v_bracket);

}  // namespace shearwave
