#include "shearwave/verify.hpp"

#include "shearwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace shearwave {

namespace {

constexpr double kRoundoff = 1e-10;

// Accumulates squared and max residuals over the evaluated points of one level.
struct Accumulator {
    double sumsq = 0.0;
    double maxabs = 0.0;
    std::size_t count = 0;
    double magnitude = 0.0;

    void add(double r) {
        sumsq += r * r;
        maxabs = std::max(maxabs, std::abs(r));
        ++count;
    }
    void scale(double m) { magnitude = std::max(magnitude, std::abs(m)); }

    LevelNorms finish(double h, double min_step) const {
        LevelNorms n;
        n.h = h;
        n.l2 = count ? std::sqrt(sumsq / static_cast<double>(count)) : 0.0;
        n.linf = maxabs;
        n.floor = kRoundoff * std::max(magnitude, 1.0) / min_step;
        return n;
    }
};

void check_level(const Sheet& s, std::size_t min_rows, const char* what) {
    if (s.rows() < min_rows)
        throw Error(ErrorCode::InsufficientSnapshots,
                    std::string(what) + " needs at least " + std::to_string(min_rows) + " evolution rows");
    if (s.cols() < 5) throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs at least 5 columns");
}

void check_same_lattice(const Sheet& a, const Sheet& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::InvalidArgument, "component sheets have different shapes");
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)); }

// Consecutive levels must halve both steps over the same origin.
void check_nested(const std::vector<Lattice>& ls) {
    if (ls.size() < 2) throw Error(ErrorCode::InvalidArgument, "at least two refinement levels are required");
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const auto& c = ls[i - 1];
        const auto& f = ls[i];
        if (!close(c.evolution.step, 2.0 * f.evolution.step) || !close(c.space.step, 2.0 * f.space.step) ||
            !close(c.evolution.start, f.evolution.start) || !close(c.space.start, f.space.start))
            throw Error(ErrorCode::InvalidArgument, "refinement levels are not nested (h, h/2, h/4, ...)",
                        "level " + std::to_string(i));
    }
}

double d_e(const Sheet& s, std::size_t r, std::size_t c) {
    return (s(r + 1, c) - s(r - 1, c)) / (2.0 * s.lattice().evolution.step);
}
double d_s(const Sheet& s, std::size_t r, std::size_t c) {
    return (s(r, c + 1) - s(r, c - 1)) / (2.0 * s.lattice().space.step);
}
double d_ee(const Sheet& s, std::size_t r, std::size_t c) {
    const double h = s.lattice().evolution.step;
    return (s(r + 1, c) - 2.0 * s(r, c) + s(r - 1, c)) / (h * h);
}
double d_ss(const Sheet& s, std::size_t r, std::size_t c) {
    const double h = s.lattice().space.step;
    return (s(r, c + 1) - 2.0 * s(r, c) + s(r, c - 1)) / (h * h);
}

double min_step(const Lattice& l) { return std::min(l.evolution.step, l.space.step); }

// Evaluated region: one evolution layer and two spatial layers dropped at each edge.
template <class F>
void interior(const Sheet& s, F&& f) {
    for (std::size_t r = 1; r + 1 < s.rows(); ++r)
        for (std::size_t c = 2; c + 2 < s.cols(); ++c) f(r, c);
}

Sheet map2(const Sheet& a, const Sheet& b, const std::function<double(double, double)>& f) {
    Sheet out(a.lattice());
    for (std::size_t i = 0; i < a.values().size(); ++i) out.values()[i] = f(a.values()[i], b.values()[i]);
    return out;
}

std::vector<double> log_finite(std::span<const double> e) {
    std::vector<double> out;
    out.reserve(e.size());
    for (double v : e) out.push_back(std::log(std::max(v, std::numeric_limits<double>::min())));
    return out;
}

}  // namespace

double fitted_order(std::span<const double> h, std::span<const double> e) {
    if (h.size() != e.size() || h.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "order fit needs at least two (h, error) pairs");
    std::vector<double> x;
    for (double v : h) x.push_back(std::log(v));
    const auto y = log_finite(e);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw Error(ErrorCode::InvalidArgument, "order fit needs distinct step sizes");
    return sxy / sxx;
}

ResidualReport make_report(std::vector<LevelNorms> levels, double target) {
    ResidualReport rep;
    rep.target = target;
    rep.levels = std::move(levels);
    rep.exact = !rep.levels.empty() &&
                std::all_of(rep.levels.begin(), rep.levels.end(), [](const LevelNorms& l) { return l.linf <= l.floor; });
    if (rep.exact) {
        rep.order = rep.order_linf = std::numeric_limits<double>::infinity();
        rep.pass = true;
        return rep;
    }
    std::vector<double> h, l2, linf;
    for (const auto& l : rep.levels) {
        h.push_back(l.h);
        l2.push_back(l.l2);
        linf.push_back(l.linf);
    }
    rep.order = fitted_order(h, l2);
    rep.order_linf = fitted_order(h, linf);
    rep.pass = rep.order >= target;
    return rep;
}

ResidualReport residual_full(std::span<const FullField> levels, const ShearModulus& m, double target) {
    std::vector<Lattice> ls;
    std::vector<LevelNorms> norms;
    for (const auto& f : levels) {
        check_level(f.U, 3, "residual_full");
        check_same_lattice(f.U, f.V);
        check_same_lattice(f.U, f.M);
        check_same_lattice(f.U, f.N);
        ls.push_back(f.U.lattice());
        const auto qt = [&](double U, double V) { return eval_Q(m, U * U + V * V) / m.rho; };
        const Sheet QU = map2(f.U, f.V, [&](double U, double V) { return qt(U, V) * U; });
        const Sheet QV = map2(f.U, f.V, [&](double U, double V) { return qt(U, V) * V; });
        Accumulator acc;
        interior(f.U, [&](std::size_t r, std::size_t c) {
            acc.add(d_e(f.U, r, c) - d_s(f.M, r, c));
            acc.add(d_e(f.M, r, c) - d_s(QU, r, c));
            acc.add(d_e(f.V, r, c) - d_s(f.N, r, c));
            acc.add(d_e(f.N, r, c) - d_s(QV, r, c));
            acc.scale(std::max({std::abs(f.M(r, c)), std::abs(f.N(r, c)), std::abs(QU(r, c)), std::abs(QV(r, c)),
                                std::abs(f.U(r, c)), std::abs(f.V(r, c))}));
        });
        norms.push_back(acc.finish(f.U.lattice().space.step, min_step(f.U.lattice())));
    }
    check_nested(ls);
    return make_report(std::move(norms), target);
}

ResidualReport residual_asymptotic(std::span<const PolarField> levels, double beta, double target) {
    std::vector<Lattice> ls;
    std::vector<LevelNorms> norms;
    for (const auto& f : levels) {
        check_level(f.theta, 3, "residual_asymptotic");
        check_same_lattice(f.theta, f.rho);
        ls.push_back(f.theta.lattice());
        Accumulator acc;
        interior(f.theta, [&](std::size_t r, std::size_t c) {
            const double rho = f.rho(r, c);
            const double th_t = d_s(f.theta, r, c), rho_t = d_s(f.rho, r, c);
            acc.add(d_e(f.theta, r, c) - beta * rho * rho * th_t);
            acc.add(d_e(f.rho, r, c) - 3.0 * beta * rho * rho * rho_t);
            acc.scale(std::max({std::abs(f.theta(r, c)), rho, std::abs(beta) * rho * rho * std::abs(f.theta(r, c)),
                                3.0 * std::abs(beta) * rho * rho * rho}));
        });
        norms.push_back(acc.finish(f.theta.lattice().space.step, min_step(f.theta.lattice())));
    }
    check_nested(ls);
    return make_report(std::move(norms), target);
}

ResidualReport residual_temple(std::span<const StrainField> levels, const TempleFlux& flux, double target) {
    std::vector<Lattice> ls;
    std::vector<LevelNorms> norms;
    for (const auto& f : levels) {
        check_level(f.U, 3, "residual_temple");
        check_same_lattice(f.U, f.V);
        ls.push_back(f.U.lattice());
        const Sheet PU = map2(f.U, f.V, [&](double u, double v) { return eval_P(flux, u, v) * u; });
        const Sheet PV = map2(f.U, f.V, [&](double u, double v) { return eval_P(flux, u, v) * v; });
        Accumulator acc;
        interior(f.U, [&](std::size_t r, std::size_t c) {
            acc.add(d_ee(f.U, r, c) - d_ss(PU, r, c));
            acc.add(d_ee(f.V, r, c) - d_ss(PV, r, c));
            acc.scale(std::max({std::abs(f.U(r, c)), std::abs(f.V(r, c)), std::abs(PU(r, c)), std::abs(PV(r, c))}));
        });
        const double hm = min_step(f.U.lattice());
        auto n = acc.finish(f.U.lattice().space.step, hm);
        n.floor /= hm;
        norms.push_back(n);
    }
    check_nested(ls);
    return make_report(std::move(norms), target);
}

double ConservationSpec::x_density(double theta, double rho) const {
    return -c1.derivative(rho) * rho * rho - 3.0 * c1(rho) * rho - c2(theta) * rho;
}

double ConservationSpec::t_density(double theta, double rho, double beta) const {
    const double r3 = rho * rho * rho;
    return beta * (-3.0 * c1.derivative(rho) * r3 * rho - 3.0 * c1(rho) * r3 - c2(theta) * r3);
}

std::string to_string(Orientation o) {
    switch (o) {
        case Orientation::XEvolution: return "x_evolution";
        case Orientation::TauEvolution: return "tau_evolution";
        case Orientation::Both: return "both";
        case Orientation::Neither: return "neither";
    }
    return "neither";
}

ConservationReport conservation_study(std::span<const PolarField> levels, double beta, const ConservationSpec& spec,
                                      double target) {
    std::vector<Lattice> ls;
    std::vector<LevelNorms> xn, tn;
    for (const auto& f : levels) {
        check_level(f.theta, 3, "conservation_residual");
        check_same_lattice(f.theta, f.rho);
        ls.push_back(f.theta.lattice());
        const Sheet X = map2(f.theta, f.rho, [&](double th, double r) { return spec.x_density(th, r); });
        const Sheet T = map2(f.theta, f.rho, [&](double th, double r) { return spec.t_density(th, r, beta); });
        Accumulator ax, at;
        interior(X, [&](std::size_t r, std::size_t c) {
            ax.add(d_e(X, r, c) - d_s(T, r, c));
            at.add(d_s(X, r, c) - d_e(T, r, c));
            const double m = std::max(std::abs(X(r, c)), std::abs(T(r, c)));
            ax.scale(m);
            at.scale(m);
        });
        const double h = f.theta.lattice().space.step, hm = min_step(f.theta.lattice());
        xn.push_back(ax.finish(h, hm));
        tn.push_back(at.finish(h, hm));
    }
    check_nested(ls);
    ConservationReport rep;
    rep.x_evolution = make_report(std::move(xn), target);
    rep.tau_evolution = make_report(std::move(tn), target);
    const bool x = rep.x_evolution.pass, t = rep.tau_evolution.pass;
    rep.orientation = x && t ? Orientation::Both
                      : x    ? Orientation::XEvolution
                      : t    ? Orientation::TauEvolution
                             : Orientation::Neither;
    return rep;
}

ConservationReport conservation_residual(std::span<const PolarField> levels, double beta,
                                         const ConservationSpec& spec, double target) {
    auto rep = conservation_study(levels, beta, spec, target);
    if (rep.orientation == Orientation::Neither)
        throw Error(ErrorCode::NeitherOrientationDecays,
                    "orders " + std::to_string(rep.x_evolution.order) + " (X) and " +
                        std::to_string(rep.tau_evolution.order) + " (tau) are below " + std::to_string(target));
    return rep;
}

SymmetrySpec::SymmetrySpec(Characteristic phi, JetGradient gradient, std::string label)
    : phi_(std::move(phi)), grad_(std::move(gradient)), label_(std::move(label)) {
    if (!phi_) throw Error(ErrorCode::InvalidArgument, "symmetry characteristic is empty");
}

std::array<std::array<double, 4>, 2> SymmetrySpec::gradient(const Jet1& j) const {
    if (grad_) return grad_(j);
    std::array<std::array<double, 4>, 2> g{};
    for (std::size_t k = 0; k < 4; ++k) {
        const double h = fd_step(j[k]);
        Jet1 p = j, m = j;
        p[k] += h;
        m[k] -= h;
        const auto fp = phi_(p), fm = phi_(m);
        g[0][k] = (fp[0] - fm[0]) / (2.0 * h);
        g[1][k] = (fp[1] - fm[1]) / (2.0 * h);
    }
    return g;
}

SymmetrySpec SymmetrySpec::hydrodynamic(ProfileFunction s3, ProfileFunction s4) {
    auto phi = [=](const Jet1& j) {
        const double th = j[0], r = j[1], tt = j[2], rt = j[3];
        return std::array<double, 2>{-(s3(th) / r + s4(r)) * tt, -(s4.derivative(r) * r + s4(r)) * rt};
    };
    auto grad = [=](const Jet1& j) {
        const double th = j[0], r = j[1], tt = j[2], rt = j[3];
        const double w = s3(th) / r + s4(r);
        const double g = s4.derivative(r) * r + s4(r);
        std::array<std::array<double, 4>, 2> out{};
        out[0] = {-s3.derivative(th) / r * tt, -(-s3(th) / (r * r) + s4.derivative(r)) * tt, -w, 0.0};
        out[1] = {0.0, -(s4.second_derivative(r) * r + 2.0 * s4.derivative(r)) * rt, 0.0, -g};
        return out;
    };
    return SymmetrySpec(phi, grad, "hydrodynamic");
}

SymmetrySpec SymmetrySpec::first_order(std::function<double(double, double, double)> s1, ProfileFunction s2,
                                       std::span<const Jet1> probes) {
    for (const auto& j : probes) {
        const double th = j[0], r = j[1], tt = j[2];
        const double hr = fd_step(r), ht = fd_step(tt);
        const double ds_dr = (s1(th, r + hr, tt) - s1(th, r - hr, tt)) / (2.0 * hr);
        const double ds_dt = (s1(th, r, tt + ht) - s1(th, r, tt - ht)) / (2.0 * ht);
        const double a = ds_dr * r, b = ds_dt * tt, c = s2(r) * tt;
        const double res = a + b + c;
        if (!(std::abs(res) <= 1e-8 * std::max({1.0, std::abs(a), std::abs(b), std::abs(c)})))
            throw Error(ErrorCode::InvalidArgument, "s1, s2 violate the first-order symmetry constraint",
                        "theta=" + std::to_string(th) + ", rho=" + std::to_string(r) +
                            ", theta_tau=" + std::to_string(tt));
    }
    auto phi = [=](const Jet1& j) { return std::array<double, 2>{-s1(j[0], j[1], j[2]), s2(j[1]) * j[3]}; };
    return SymmetrySpec(phi, {}, "first_order");
}

ResidualReport linearized_symmetry_residual(std::span<const PolarField> levels, double beta,
                                            const SymmetrySpec& spec, double target) {
    std::vector<Lattice> ls;
    std::vector<LevelNorms> norms;
    for (const auto& f : levels) {
        check_level(f.theta, 3, "linearized_symmetry_residual");
        check_same_lattice(f.theta, f.rho);
        const Lattice& lat = f.theta.lattice();
        ls.push_back(lat);
        Sheet pt(lat), pr(lat), tt(lat), rt(lat);
        for (std::size_t r = 0; r < f.theta.rows(); ++r)
            for (std::size_t c = 1; c + 1 < f.theta.cols(); ++c) {
                tt(r, c) = d_s(f.theta, r, c);
                rt(r, c) = d_s(f.rho, r, c);
                const auto p = spec(Jet1{f.theta(r, c), f.rho(r, c), tt(r, c), rt(r, c)});
                pt(r, c) = p[0];
                pr(r, c) = p[1];
            }
        Accumulator acc;
        interior(f.theta, [&](std::size_t r, std::size_t c) {
            const double rho = f.rho(r, c);
            acc.add(d_e(pt, r, c) - 2.0 * beta * rho * tt(r, c) * pr(r, c) - beta * rho * rho * d_s(pt, r, c));
            acc.add(d_e(pr, r, c) - 6.0 * beta * rho * rt(r, c) * pr(r, c) - 3.0 * beta * rho * rho * d_s(pr, r, c));
            acc.scale(std::max({std::abs(pt(r, c)), std::abs(pr(r, c)),
                                std::abs(beta) * rho * rho * (std::abs(pt(r, c)) + std::abs(pr(r, c)))}));
        });
        const double hm = min_step(lat);
        auto n = acc.finish(lat.space.step, hm);
        n.floor /= hm;
        norms.push_back(n);
    }
    check_nested(ls);
    return make_report(std::move(norms), target);
}

CommutatorReport commutator_residual(const SymmetrySpec& spec, double beta, std::span<const Jet2> jets) {
    CommutatorReport rep;
    for (const auto& j : jets) {
        const double r = j[1], tt = j[2], rt = j[3], ttt = j[4], rtt = j[5];
        const Jet1 j1{j[0], r, tt, rt};
        const auto phi = spec(j1);
        const auto g = spec.gradient(j1);
        // Formal total tau-derivatives truncated at second order.
        const double dphi0 = g[0][0] * tt + g[0][1] * rt + g[0][2] * ttt + g[0][3] * rtt;
        const double dphi1 = g[1][0] * tt + g[1][1] * rt + g[1][2] * ttt + g[1][3] * rtt;
        const double psi0 = beta * r * r * tt, psi1 = 3.0 * beta * r * r * rt;
        const double dpsi0 = 2.0 * beta * r * rt * tt + beta * r * r * ttt;
        const double dpsi1 = 6.0 * beta * r * rt * rt + 3.0 * beta * r * r * rtt;

        // phi'[psi] - psi'[phi], component by component.
        const double a0[] = {phi[1] * 2.0 * beta * r * tt, dphi0 * beta * r * r, -psi0 * g[0][0],
                             -psi1 * g[0][1], -dpsi0 * g[0][2], -dpsi1 * g[0][3]};
        const double a1[] = {phi[1] * 6.0 * beta * r * rt, dphi1 * 3.0 * beta * r * r, -psi0 * g[1][0],
                             -psi1 * g[1][1], -dpsi0 * g[1][2], -dpsi1 * g[1][3]};
        double c0 = 0.0, c1 = 0.0;
        for (double v : a0) {
            c0 += v;
            rep.scale = std::max(rep.scale, std::abs(v));
        }
        for (double v : a1) {
            c1 += v;
            rep.scale = std::max(rep.scale, std::abs(v));
        }
        rep.max_abs = std::max({rep.max_abs, std::abs(c0), std::abs(c1)});
    }
    return rep;
}

namespace {

ConvergenceLevel compare(const StateGrid& run, const StateGrid& oracle, std::size_t n) {
    ConvergenceLevel lv;
    lv.n = n;
    lv.h = run.grid.h();
    double sumsq = 0.0;
    std::size_t count = 0;
    for (const auto& name : oracle.names) {
        const auto& a = run.field(name);
        const auto& b = oracle.field(name);
        if (a.size() != b.size())
            throw Error(ErrorCode::InvalidArgument, "oracle and solver grids differ", "field " + name);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double e = a[i] - b[i];
            lv.linf = std::max(lv.linf, std::abs(e));
            sumsq += e * e;
            ++count;
        }
    }
    lv.l2 = count ? std::sqrt(sumsq / static_cast<double>(count)) : 0.0;
    return lv;
}

ConvergenceReport finish(std::vector<ConvergenceLevel> levels) {
    ConvergenceReport rep;
    rep.levels = std::move(levels);
    std::vector<double> h, li, l2;
    for (const auto& l : rep.levels) {
        h.push_back(l.h);
        li.push_back(l.linf);
        l2.push_back(l.l2);
    }
    if (h.size() >= 2) {
        rep.order_linf = fitted_order(h, li);
        rep.order_l2 = fitted_order(h, l2);
    }
    return rep;
}

}  // namespace

ConvergenceReport convergence_study(const RunFactory& run, const OracleFactory& oracle,
                                    std::span<const std::size_t> levels) {
    if (levels.size() < 2) throw Error(ErrorCode::InvalidArgument, "convergence study needs at least two levels");
    std::vector<ConvergenceLevel> out;
    for (std::size_t n : levels) {
        const StateGrid s = run(n);
        StateGrid o;
        try {
            o = oracle(n);
        } catch (const Error& e) {
            throw Error(ErrorCode::OracleFailure, e.what(), "n=" + std::to_string(n));
        }
        out.push_back(compare(s, o, n));
    }
    return finish(std::move(out));
}

StateGrid restrict_to(const StateGrid& fine, std::size_t n) {
    if (n == 0 || fine.grid.n % n != 0)
        throw Error(ErrorCode::InvalidArgument,
                    std::to_string(n) + " does not divide the fine resolution " + std::to_string(fine.grid.n));
    const std::size_t m = fine.grid.n / n;
    StateGrid out;
    out.grid = fine.grid;
    out.grid.n = n;
    out.names = fine.names;
    for (const auto& f : fine.fields) {
        std::vector<double> c(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < m; ++k) c[i] += f[i * m + k];
            c[i] /= static_cast<double>(m);
        }
        out.fields.push_back(std::move(c));
    }
    return out;
}

ConvergenceReport convergence_study_self(const RunFactory& run, std::span<const std::size_t> levels) {
    if (levels.size() < 3) throw Error(ErrorCode::InvalidArgument, "self convergence needs at least three levels");
    const std::size_t finest = *std::max_element(levels.begin(), levels.end());
    const StateGrid ref = run(finest);
    std::vector<ConvergenceLevel> out;
    for (std::size_t n : levels) {
        if (n == finest) continue;
        out.push_back(compare(run(n), restrict_to(ref, n), n));
    }
    return finish(std::move(out));
}

}  // namespace shearwave
