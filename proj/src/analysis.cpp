#include "shearwave/analysis.hpp"

#include "shearwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace shearwave {

namespace {

std::string at(double u, double v) {
    std::ostringstream os;
    os.precision(17);
    os << "u=" << u << ", v=" << v;
    return os.str();
}

double norm2(const Vec2& a) { return std::hypot(a[0], a[1]); }

// Updates a flag entry with one more normalized residual sample.
void accumulate(ClassificationReport::Entry& e, double r) { e.residual = std::max(e.residual, r); }

void finalize(ClassificationReport::Entry& e) {
    if (e.evaluated) e.flag = decide_flag(e.residual);
}

}  // namespace

EigenReport temple_eigen(const TempleFlux& f, double u, double v) {
    const double P = f(u, v);
    const auto g = f.gradient(u, v);
    const auto H = f.hessian(u, v);
    if (!std::isfinite(P) || !std::isfinite(g[0]) || !std::isfinite(g[1]))
        throw Error(ErrorCode::DegenerateDirection, "flux or its gradient is not finite", at(u, v));

    EigenReport r;
    r.u = u;
    r.v = v;
    r.lambda1 = P + u * g[0] + v * g[1];
    r.lambda2 = P;
    r.grad_lambda1 = {2.0 * g[0] + u * H[0] + v * H[1], 2.0 * g[1] + u * H[1] + v * H[2]};
    r.grad_lambda2 = {g[0], g[1]};

    // d1 is parallel to (u, v); at the origin the matrix is P * I.
    if (u != 0.0) {
        r.d1 = {1.0, v / u};
    } else {
        r.d1 = {0.0, 1.0};
        r.d1_projective = true;
    }
    // d2 is parallel to (P_v, -P_u); with a vanishing gradient the matrix is P * I.
    if (g[1] != 0.0) {
        r.d2 = {1.0, -g[0] / g[1]};
    } else if (g[0] != 0.0) {
        r.d2 = {0.0, 1.0};
        r.d2_projective = true;
    } else {
        r.d2 = {1.0, 0.0};
    }
    r.ld1 = r.grad_lambda1[0] * r.d1[0] + r.grad_lambda1[1] * r.d1[1];
    r.ld2 = r.grad_lambda2[0] * r.d2[0] + r.grad_lambda2[1] * r.d2[1];
    if (!std::isfinite(r.ld1) || !std::isfinite(r.ld2))
        throw Error(ErrorCode::DegenerateDirection, "eigenvector formulas are undefined", at(u, v));
    return r;
}

std::string to_string(Flag f) {
    switch (f) {
        case Flag::Set: return "set";
        case Flag::Cleared: return "cleared";
        case Flag::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

Flag decide_flag(double residual) noexcept {
    if (residual <= 1e-8) return Flag::Set;
    if (residual >= 1e-4) return Flag::Cleared;
    return Flag::Indeterminate;
}

double decoupling_residual(const BivariateFunction& alpha, double u, double v) {
    const auto a = alpha.gradient(u, v);
    const auto h = alpha.hessian(u, v);
    if (v == 0.0) throw Error(ErrorCode::ChartFailure, "u/v is undefined at v = 0", at(u, v));
    // Jacobian of (alpha, b = u/v) with respect to (u, v).
    const double bu = 1.0 / v, bv = -u / (v * v);
    const double det = a[0] * bv - a[1] * bu;
    const double scale = std::abs(a[0] * bv) + std::abs(a[1] * bu);
    if (!(std::abs(det) > 1e-12 * scale))
        throw Error(ErrorCode::ChartFailure, "(alpha, u/v) chart is singular", at(u, v));
    const double u_b = -a[1] / det, v_b = a[0] / det;
    return u_b * (h[0] * u + h[1] * v + a[0]) + v_b * (h[1] * u + h[2] * v + a[1]);
}

ClassificationReport classify(const TempleFlux& f, std::span<const Vec2> samples,
                              const std::optional<BivariateFunction>& alpha) {
    ClassificationReport rep;
    rep.sample_count = samples.size();
    rep.decouples.evaluated = alpha.has_value();
    for (const auto& s : samples) {
        const double u = s[0], v = s[1];
        const auto e = temple_eigen(f, u, v);
        const auto g = f.gradient(u, v);

        accumulate(rep.equal_eigenvalues, std::abs(e.lambda1 - e.lambda2) /
                                              std::max({1.0, std::abs(e.lambda1), std::abs(e.lambda2)}));
        accumulate(rep.completely_exceptional,
                   std::abs(e.ld1) / std::max(1.0, norm2(e.grad_lambda1) * norm2(e.d1)));
        accumulate(rep.hamiltonian, std::abs(v * g[1] - u * g[0]) /
                                        std::max({1.0, std::abs(v * g[1]), std::abs(u * g[0])}));
        if (alpha) {
            const auto a = alpha->gradient(u, v);
            const double r = decoupling_residual(*alpha, u, v);
            const double scale = std::max({1.0, std::abs(a[0]), std::abs(a[1])});
            accumulate(rep.decouples, std::abs(r) / scale);
        }
    }
    finalize(rep.equal_eigenvalues);
    finalize(rep.completely_exceptional);
    finalize(rep.hamiltonian);
    finalize(rep.decouples);
    return rep;
}

CompatibilityResiduals compatibility_residuals(const FluxPair& flux, const BivariateFunction& phi,
                                               std::span<const Vec2> samples) {
    CompatibilityResiduals out;
    std::vector<double> ks;
    ks.reserve(samples.size());
    for (const auto& s : samples) {
        const double u = s[0], v = s[1];
        const auto A = flux.A.gradient(u, v);
        const auto B = flux.B.gradient(u, v);
        const auto p = phi.gradient(u, v);
        if (p[1] == 0.0) throw Error(ErrorCode::DegenerateConstraint, "phi_v vanishes", at(u, v));
        // On phi = const, v_x = -(phi_u/phi_v) u_x; the two resulting transport
        // equations for u agree iff this vanishes.
        const double g4 = B[0] * p[1] * p[1] + (A[0] - B[1]) * p[0] * p[1] - A[1] * p[0] * p[0];
        out.g4 = std::max(out.g4, std::abs(g4));
        ks.push_back(A[0] - A[1] * p[0] / p[1]);
    }
    if (!ks.empty()) {
        double mean = 0.0;
        for (double k : ks) mean += k;
        mean /= static_cast<double>(ks.size());
        double var = 0.0;
        for (double k : ks) var += (k - mean) * (k - mean);
        out.g5 = var / static_cast<double>(ks.size());
    }
    return out;
}

FluxPair construct_temple_flux(const ProfileFunction& H, const ProfileFunction& Phi,
                               const ProfileFunction& Psi, const BivariateFunction& phi) {
    auto make = [&](bool first) {
        const ProfileFunction& extra = first ? Phi : Psi;
        return BivariateFunction(
            [=](double u, double v) {
                const double p = phi(u, v);
                return H(p) * (first ? u : v) + extra(p);
            },
            [=](double u, double v) {
                const double p = phi(u, v);
                const auto gp = phi.gradient(u, v);
                const double w = first ? u : v;
                const double dh = H.derivative(p), de = extra.derivative(p);
                std::array<double, 2> g{(dh * w + de) * gp[0], (dh * w + de) * gp[1]};
                g[first ? 0 : 1] += H(p);
                return g;
            },
            {}, first ? "A" : "B");
    };
    FluxPair pair{make(true), make(false)};

    const Vec2 probes[] = {{1.0, 1.0}, {1.3, 0.7}, {0.8, 1.2}, {-0.6, 1.1}};
    std::vector<Vec2> usable;
    for (const auto& s : probes)
        if (phi.gradient(s[0], s[1])[1] != 0.0) usable.push_back(s);
    const auto res = compatibility_residuals(pair, phi, usable);
    double scale = 1.0;
    for (const auto& s : usable) {
        const auto a = pair.A.gradient(s[0], s[1]);
        const auto b = pair.B.gradient(s[0], s[1]);
        const auto p = phi.gradient(s[0], s[1]);
        const double pm = std::max(std::abs(p[0]), std::abs(p[1]));
        scale = std::max({scale, (std::abs(a[0]) + std::abs(a[1]) + std::abs(b[0]) + std::abs(b[1])) * pm * pm});
    }
    if (res.g4 > 1e-8 * scale)
        throw Error(ErrorCode::InvalidArgument, "constructed flux pair fails the compatibility condition");
    return pair;
}

double DiagonalForm::speed(double u, double v) const {
    const double a = alpha(u, v);
    const auto g = alpha.gradient(u, v);
    return R.derivative(a) * (g[0] * u + g[1] * v) + R(a);
}

DiagonalForm diagonal_form(const TempleFlux& f, const BivariateFunction& alpha, const ProfileFunction& R,
                           std::span<const Vec2> samples) {
    for (const auto& s : samples) {
        const double u = s[0], v = s[1];
        const double p = f(u, v), r = R(alpha(u, v));
        if (!(std::abs(p - r) <= 1e-10 * std::max(1.0, std::abs(p))))
            throw Error(ErrorCode::ChartFailure, "P(u, v) != R(alpha(u, v))", at(u, v));
        if (v == 0.0) throw Error(ErrorCode::ChartFailure, "u/v is undefined at v = 0", at(u, v));
        const auto a = alpha.gradient(u, v);
        const double bu = 1.0 / v, bv = -u / (v * v);
        const double det = a[0] * bv - a[1] * bu;
        if (!(std::abs(det) > 1e-12 * (std::abs(a[0] * bv) + std::abs(a[1] * bu))))
            throw Error(ErrorCode::ChartFailure, "(alpha, u/v) chart is singular", at(u, v));
    }
    return {alpha, R, f};
}

std::vector<double> symmetry_coefficient_s2(const ProfileFunction& s1, const ProfileFunction& R,
                                            const ProfileFunction& f, std::span<const double> alpha_grid,
                                            double s2_initial) {
    auto rhs = [&](double a, double s2) {
        const double gap = f(a) - R(a);
        if (!(std::abs(gap) >= 1e-12))
            throw Error(ErrorCode::CoincidenceOfSpeeds, "f(alpha) coincides with R(alpha)",
                        "alpha=" + std::to_string(a));
        return -R.derivative(a) * (s2 - s1(a)) / gap;
    };
    std::vector<double> out;
    if (alpha_grid.empty()) return out;
    out.reserve(alpha_grid.size());
    double y = s2_initial;
    rhs(alpha_grid[0], y);
    out.push_back(y);
    for (std::size_t i = 1; i < alpha_grid.size(); ++i) {
        const double a = alpha_grid[i - 1], h = alpha_grid[i] - a;
        const double k1 = rhs(a, y);
        const double k2 = rhs(a + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = rhs(a + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = rhs(a + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.push_back(y);
    }
    return out;
}

std::vector<double> symmetry_coefficient_s2_product(const ProfileFunction& s1,
                                                    std::span<const double> alpha_grid, double s2_initial) {
    // R' (s2 - s1) + s2' 2 alpha R' = 0 for any R with R' != 0; R(a) = a represents it.
    const auto R = ProfileFunction::linear(1.0, 0.0);
    const ProfileFunction f([](double a) { return 3.0 * a; }, [](double) { return 3.0; });
    return symmetry_coefficient_s2(s1, R, f, alpha_grid, s2_initial);
}

BivariateFunction product_chart() { return TempleFlux::product().p; }

BivariateFunction exp_difference_chart(double a, double c) {
    return BivariateFunction(
        [=](double u, double v) { return std::exp(a * (u - v) + c); },
        [=](double u, double v) {
            const double e = std::exp(a * (u - v) + c);
            return std::array<double, 2>{a * e, -a * e};
        },
        [=](double u, double v) {
            const double e = a * a * std::exp(a * (u - v) + c);
            return std::array<double, 3>{e, -e, e};
        },
        "exp_difference");
}

}  // namespace shearwave
