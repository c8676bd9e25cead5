#include "commands.hpp"

#include "config.hpp"
#include "io.hpp"

#include "shearwave/analysis.hpp"
#include "shearwave/errors.hpp"
#include "shearwave/exact.hpp"
#include "shearwave/simulate.hpp"
#include "shearwave/verify.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <random>

namespace shearwave::app {

namespace {

struct Outcome {
    int code = ExitOk;
    json results = json::object();
    std::vector<std::string> artifacts;
};

void say(const Options& o, const std::string& line) {
    if (!o.quiet) std::cout << line << '\n';
}

std::string fmt(double v) { return format_number(v); }

// ---------------------------------------------------------------------------
// report serialization

json to_json(const ResidualReport& r) {
    json levels = json::array();
    for (const auto& l : r.levels)
        levels.push_back({{"h", l.h}, {"l2", l.l2}, {"linf", l.linf}, {"floor", l.floor}});
    return {{"levels", levels}, {"order", number(r.order)}, {"order_linf", number(r.order_linf)},
            {"exact", r.exact}, {"target", r.target}, {"pass", r.pass}};
}

json to_json(const ConvergenceReport& r) {
    json levels = json::array();
    for (const auto& l : r.levels) levels.push_back({{"n", l.n}, {"h", l.h}, {"linf", l.linf}, {"l2", l.l2}});
    return {{"levels", levels}, {"order_linf", number(r.order_linf)}, {"order_l2", number(r.order_l2)}};
}

json to_json(const ClassificationReport::Entry& e) {
    return {{"flag", to_string(e.flag)}, {"residual", number(e.residual)}, {"evaluated", e.evaluated}};
}

std::string describe(const ResidualReport& r) {
    if (r.exact) return "exact (roundoff on every level)";
    return "order " + fmt(r.order) + " (target " + fmt(r.target) + ")";
}

// ---------------------------------------------------------------------------
// exact solution families sampled on lattices

enum class FamilyKind { Full, Polar, Temple };

struct Family {
    std::string name;
    FamilyKind kind = FamilyKind::Full;
    ShearModulus modulus;
    double beta = 0.0;
    TempleFlux flux;
    std::function<FullField(const Lattice&)> full;
    std::function<PolarField(const Lattice&)> polar;
    std::function<StrainField(const Lattice&)> temple;
};

FullField sample_full(const Lattice& lat, const std::function<FullState(double, double)>& f) {
    FullField out{Sheet(lat), Sheet(lat), Sheet(lat), Sheet(lat)};
    for (std::size_t r = 0; r < lat.evolution.count; ++r)
        for (std::size_t c = 0; c < lat.space.count; ++c) {
            const FullState s = f(lat.evolution.at(r), lat.space.at(c));
            out.U(r, c) = s.U;
            out.V(r, c) = s.V;
            out.M(r, c) = s.M;
            out.N(r, c) = s.N;
        }
    return out;
}

StrainField sample_strain(const Lattice& lat, const std::function<StrainState(double, double)>& f) {
    StrainField out{Sheet(lat), Sheet(lat)};
    for (std::size_t r = 0; r < lat.evolution.count; ++r)
        for (std::size_t c = 0; c < lat.space.count; ++c) {
            const StrainState s = f(lat.evolution.at(r), lat.space.at(c));
            out.U(r, c) = s.U;
            out.V(r, c) = s.V;
        }
    return out;
}

std::vector<Sheet*> sheets_of(FullField& f) { return {&f.U, &f.V, &f.M, &f.N}; }
std::vector<Sheet*> sheets_of(PolarField& f) { return {&f.theta, &f.rho}; }
std::vector<Sheet*> sheets_of(StrainField& f) { return {&f.U, &f.V}; }

template <class F>
void add_noise(F& field, double amplitude, std::uint64_t seed) {
    auto sheets = sheets_of(field);
    std::mt19937_64 gen(seed ^ (0x9e3779b97f4a7c15ULL * sheets.front()->rows()));
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (Sheet* s : sheets)
        for (auto& v : s->values()) v += amplitude * dist(gen);
}

Interval parse_bracket(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw ConfigError(path, "expected [lo, hi]");
    const Interval b{as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]")};
    if (!(b.hi > b.lo)) throw ConfigError(path, "needs lo < hi");
    return b;
}

Family parse_family(const json& j, const std::string& path) {
    const Node n(j, path);
    const std::string t = n.tag();
    const Node b = n.child(t);
    const std::string p = b.path();
    Family f;
    f.name = t;

    if (t == "carroll") {
        f.kind = FamilyKind::Full;
        f.modulus = parse_modulus(b.value("modulus"), p + ".modulus");
        const double A = b.positive("amplitude"), k = b.positive("wavenumber");
        const int sign = b.sign("sign", +1);
        const CarrollWave w = b.has("omega") ? CarrollWave(f.modulus, A, k, b.positive("omega"), sign)
                                             : CarrollWave(f.modulus, A, k, sign);
        f.full = [w](const Lattice& lat) {
            return sample_full(lat, [&](double t, double x) { return eval_carroll_full(w, x, t); });
        };
    } else if (t == "generalized_carroll") {
        f.kind = FamilyKind::Full;
        GeneralizedCarroll g;
        g.modulus = parse_modulus(b.value("modulus"), p + ".modulus");
        g.amplitude = b.positive("amplitude");
        g.profile = parse_profile(b.value("profile"), p + ".profile");
        g.direction = b.sign("direction", -1);
        g.polarization = b.sign("polarization", +1);
        f.modulus = g.modulus;
        f.full = [g](const Lattice& lat) {
            return sample_full(lat, [&](double t, double x) { return eval_generalized_carroll_full(g, x, t); });
        };
    } else if (t == "dalembert") {
        f.kind = FamilyKind::Full;
        f.modulus = parse_modulus(b.value("modulus"), p + ".modulus");
        DalembertSolution d{std::sqrt(eval_Q(f.modulus, 0.0) / f.modulus.rho),
                            parse_profile(b.value("U0"), p + ".U0"), parse_profile(b.value("V0"), p + ".V0"),
                            parse_profile(b.value("M0"), p + ".M0"), parse_profile(b.value("N0"), p + ".N0")};
        f.full = [d](const Lattice& lat) {
            return sample_full(lat, [&](double t, double x) { return eval_dalembert(d, x, t); });
        };
    } else if (t == "asymptotic_linear") {
        f.kind = FamilyKind::Polar;
        f.beta = parse_beta(b.value("beta"), p + ".beta").beta;
        const double A = b.positive("amplitude");
        const ProfileFunction theta = parse_profile(b.value("theta"), p + ".theta");
        const double speed = b.number("phase_speed", f.beta * A * A);
        f.polar = [A, theta, speed](const Lattice& lat) {
            return PolarField{sample(lat, [&](double X, double tau) { return theta(speed * X + tau); }),
                              Sheet(lat, A)};
        };
    } else if (t == "simple_wave") {
        f.kind = FamilyKind::Polar;
        f.beta = parse_beta(b.value("beta"), p + ".beta").beta;
        const ProfileFunction phi = parse_profile(b.value("phi"), p + ".phi");
        const double shift = b.number("theta_shift", 0.0);
        const double beta = f.beta;
        f.polar = [beta, phi, shift](const Lattice& lat) {
            Sheet rho = sample(lat, [&](double X, double tau) { return eval_simple_wave(beta, phi, X, tau); });
            Sheet theta = potential_phi(rho, beta).phi;
            for (auto& v : theta.values()) v += shift;
            return PolarField{std::move(theta), std::move(rho)};
        };
    } else if (t == "hodograph") {
        f.kind = FamilyKind::Polar;
        f.beta = parse_beta(b.value("beta"), p + ".beta").beta;
        const HodographData h{parse_profile(b.value("s3"), p + ".s3"), parse_profile(b.value("s4"), p + ".s4")};
        const Node s = b.child("seed");
        const PolarState seed{s.positive("rho"), s.number("theta")};
        s.done();
        const double beta = f.beta;
        f.polar = [h, beta, seed](const Lattice& lat) { return hodograph_field(h, beta, lat, seed); };
    } else if (t == "overdetermined") {
        f.kind = FamilyKind::Temple;
        OverdeterminedSolution s;
        s.flux = parse_flux(b.value("flux"), p + ".flux");
        s.level = b.positive("level");
        s.profile = parse_profile(b.value("profile"), p + ".profile");
        s.direction = b.sign("direction", -1);
        s.v_bracket = parse_bracket(b.value("v_bracket"), p + ".v_bracket");
        f.flux = s.flux;
        f.temple = [s](const Lattice& lat) {
            return sample_strain(lat, [&](double t, double x) { return eval_overdetermined(s, x, t); });
        };
    } else if (t == "separable") {
        f.kind = FamilyKind::Temple;
        f.flux = parse_flux(b.value("flux"), p + ".flux");
        const double k = b.number("k"), phi0 = b.number("phi0"), dphi0 = b.number("dphi0", 0.0);
        const TempleFlux flux = f.flux;
        f.temple = [flux, k, phi0, dphi0](const Lattice& lat) {
            std::vector<double> ts(lat.evolution.count);
            for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = lat.evolution.at(i);
            const SeparableSolution sol = eval_separable(flux, k, phi0, dphi0, ts);
            StrainField out{Sheet(lat), Sheet(lat)};
            for (std::size_t r = 0; r < lat.evolution.count; ++r)
                for (std::size_t c = 0; c < lat.space.count; ++c) {
                    out.U(r, c) = sol.u(lat.space.at(c), r);
                    out.V(r, c) = sol.v(lat.space.at(c), r);
                }
            return out;
        };
    } else if (t == "perturbed") {
        f = parse_family(b.value("base"), p + ".base");
        const double amp = b.number("amplitude");
        const std::uint64_t seed = b.count("seed", 1);
        f.name = "perturbed " + f.name;
        if (f.full) f.full = [g = f.full, amp, seed](const Lattice& l) { auto x = g(l); add_noise(x, amp, seed); return x; };
        if (f.polar) f.polar = [g = f.polar, amp, seed](const Lattice& l) { auto x = g(l); add_noise(x, amp, seed); return x; };
        if (f.temple) f.temple = [g = f.temple, amp, seed](const Lattice& l) { auto x = g(l); add_noise(x, amp, seed); return x; };
    } else {
        throw ConfigError(path + "." + t,
                          "unknown solution family (carroll, generalized_carroll, dalembert, asymptotic_linear, "
                          "simple_wave, hodograph, overdetermined, separable, perturbed)");
    }
    b.done();
    return f;
}

std::vector<Lattice> nested(Lattice base, std::size_t count) {
    std::vector<Lattice> out{base};
    while (out.size() < count) out.push_back(out.back().refined());
    return out;
}

struct Sampled {
    std::vector<FullField> full;
    std::vector<PolarField> polar;
    std::vector<StrainField> temple;
};

Sampled sample_levels(const Family& f, const std::vector<Lattice>& lats) {
    Sampled s;
    for (const auto& l : lats) {
        switch (f.kind) {
            case FamilyKind::Full: s.full.push_back(f.full(l)); break;
            case FamilyKind::Polar: s.polar.push_back(f.polar(l)); break;
            case FamilyKind::Temple: s.temple.push_back(f.temple(l)); break;
        }
    }
    return s;
}

ResidualReport family_residual(const Family& f, const Sampled& s, double target) {
    switch (f.kind) {
        case FamilyKind::Full: return residual_full(s.full, f.modulus, target);
        case FamilyKind::Polar: return residual_asymptotic(s.polar, f.beta, target);
        case FamilyKind::Temple: break;
    }
    return residual_temple(s.temple, f.flux, target);
}

std::string write_family_csv(const Family& f, const Lattice& lat, const std::filesystem::path& dir) {
    const auto path = dir / "solution.csv";
    const std::size_t nr = lat.evolution.count, nc = lat.space.count;
    if (f.kind == FamilyKind::Full) {
        const FullField s = f.full(lat);
        CsvWriter w(path, {"t", "x", "U", "V", "M", "N"});
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c)
                w.row({lat.evolution.at(r), lat.space.at(c), s.U(r, c), s.V(r, c), s.M(r, c), s.N(r, c)});
    } else if (f.kind == FamilyKind::Polar) {
        const PolarField s = f.polar(lat);
        CsvWriter w(path, {"X", "tau", "theta", "rho", "U", "V"});
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c) {
                const double th = s.theta(r, c), rh = s.rho(r, c);
                w.row({lat.evolution.at(r), lat.space.at(c), th, rh, rh * std::cos(th), rh * std::sin(th)});
            }
    } else {
        const StrainField s = f.temple(lat);
        CsvWriter w(path, {"t", "x", "U", "V"});
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c) w.row({lat.evolution.at(r), lat.space.at(c), s.U(r, c), s.V(r, c)});
    }
    return path.filename().string();
}

// ---------------------------------------------------------------------------
// symmetries

SymmetrySpec parse_symmetry(const json& j, const std::string& path) {
    const Node n(j, path);
    const std::string t = n.tag();
    const Node b = n.child(t);
    if (t == "hydrodynamic") {
        auto s = SymmetrySpec::hydrodynamic(parse_profile(b.value("s3"), b.path() + ".s3"),
                                            parse_profile(b.value("s4"), b.path() + ".s4"));
        b.done();
        return s;
    }
    if (t == "theta_tau_squared") {
        b.done();
        return SymmetrySpec([](const Jet1& jet) { return std::array<double, 2>{jet[2] * jet[2], 0.0}; }, {},
                            "theta_tau_squared");
    }
    throw ConfigError(path + "." + t, "unknown symmetry (hydrodynamic, theta_tau_squared)");
}

// ---------------------------------------------------------------------------
// exact / hodograph

Outcome exact_outcome(const Family& f, const Lattice& lat, const std::optional<Node>& check,
                      const Options& opt) {
    Outcome out;
    out.artifacts.push_back(write_family_csv(f, lat, opt.out));
    out.results["family"] = f.name;
    out.results["rows"] = lat.evolution.count;
    out.results["cols"] = lat.space.count;
    if (check) {
        const std::size_t levels = check->count("levels", 3);
        const double target = check->number("target", 1.8);
        check->done();
        if (levels < 2) throw ConfigError(check->path() + ".levels", "needs at least 2 levels");
        const auto r = family_residual(f, sample_levels(f, nested(lat, levels)), target);
        out.results["self_check"] = to_json(r);
        say(opt, "self-check residual: " + describe(r) + (r.pass ? " PASS" : " FAIL"));
        if (!r.pass) out.code = ExitVerificationFailure;
    }
    say(opt, "sampled " + f.name + " on " + std::to_string(lat.evolution.count) + " x " +
                 std::to_string(lat.space.count) + " points");
    return out;
}

Outcome cmd_exact(const Node& cfg, const Options& opt) {
    const Family f = parse_family(cfg.value("solution"), "solution");
    const Lattice lat = parse_lattice(cfg.value("lattice"), "lattice");
    const auto check = cfg.optional_child("self_check");
    cfg.done();
    return exact_outcome(f, lat, check, opt);
}

Outcome cmd_hodograph(const Node& cfg, const Options& opt) {
    json inner = json::object();
    for (const char* key : {"beta", "s3", "s4", "seed"}) inner[key] = cfg.value(key);
    const Family f = parse_family(json{{"hodograph", inner}}, "");
    const Lattice lat = parse_lattice(cfg.value("lattice"), "lattice");
    const auto check = cfg.optional_child("self_check");
    cfg.done();

    const HodographData h{parse_profile(inner["s3"], "s3"), parse_profile(inner["s4"], "s4")};
    Outcome out = exact_outcome(f, lat, check, opt);
    // Smallest |det J| over the sampled (theta, rho) values: distance from the fold.
    const PolarField p = f.polar(lat);
    double min_det = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.rho.values().size(); ++i) {
        const auto J = hodograph_jacobian(h, f.beta, p.theta.values()[i], p.rho.values()[i]);
        min_det = std::min(min_det, std::abs(J[0] * J[3] - J[1] * J[2]));
    }
    out.results["min_abs_jacobian"] = number(min_det);
    return out;
}

// ---------------------------------------------------------------------------
// verify

Outcome cmd_verify(const Node& cfg, const Options& opt) {
    std::optional<Family> fam;
    if (cfg.has("solution")) fam = parse_family(cfg.value("solution"), "solution");
    std::optional<Lattice> lat;
    if (cfg.has("lattice")) lat = parse_lattice(cfg.value("lattice"), "lattice");
    const std::size_t level_count = cfg.count("levels", 3);
    const auto& studies = cfg.value("studies");
    cfg.done();
    if (!studies.is_array() || studies.empty()) throw ConfigError("studies", "expected a non-empty array");
    if (level_count < 2) throw ConfigError("levels", "needs at least 2 levels");

    // Parse everything before computing.
    struct Study {
        std::string kind;
        std::function<json(bool&)> run;
    };
    std::vector<Study> plan;
    std::optional<Sampled> sampled;
    auto fields = [&]() -> const Sampled& {
        if (!sampled) sampled = sample_levels(*fam, nested(*lat, level_count));
        return *sampled;
    };
    auto need_solution = [&](const std::string& where, bool polar) {
        if (!fam) throw ConfigError(where, "this study needs a solution block");
        if (!lat) throw ConfigError(where, "this study needs a lattice block");
        if (polar && fam->kind != FamilyKind::Polar)
            throw ConfigError(where, "this study needs an asymptotic-system solution (theta, rho)");
    };

    for (std::size_t i = 0; i < studies.size(); ++i) {
        const std::string path = "studies[" + std::to_string(i) + "]";
        const Node sn(studies[i], path);
        const std::string t = sn.tag();
        const Node b = sn.child(t);
        const double target = b.number("target", 1.8);
        if (t == "residual") {
            need_solution(b.path(), false);
            b.done();
            plan.push_back({t, [&, target](bool& pass) {
                                const auto r = family_residual(*fam, fields(), target);
                                pass = r.pass;
                                say(opt, "residual: " + describe(r) + (pass ? " PASS" : " FAIL"));
                                return to_json(r);
                            }});
        } else if (t == "conservation") {
            need_solution(b.path(), true);
            const ConservationSpec spec{parse_profile(b.value("c1"), b.path() + ".c1"),
                                        parse_profile(b.value("c2"), b.path() + ".c2")};
            b.done();
            plan.push_back({t, [&, spec, target](bool& pass) {
                                const auto r = conservation_study(fields().polar, fam->beta, spec, target);
                                pass = r.orientation != Orientation::Neither;
                                say(opt, "conservation: orientation " + to_string(r.orientation) +
                                             (pass ? " PASS" : " FAIL (NeitherOrientationDecays)"));
                                return json{{"x_evolution", to_json(r.x_evolution)},
                                            {"tau_evolution", to_json(r.tau_evolution)},
                                            {"orientation", to_string(r.orientation)}};
                            }});
        } else if (t == "symmetry") {
            need_solution(b.path(), true);
            const SymmetrySpec spec = parse_symmetry(b.value("symmetry"), b.path() + ".symmetry");
            b.done();
            plan.push_back({t, [&, spec, target](bool& pass) {
                                const auto r = linearized_symmetry_residual(fields().polar, fam->beta, spec, target);
                                pass = r.pass;
                                say(opt, "symmetry " + spec.label() + ": " + describe(r) + (pass ? " PASS" : " FAIL"));
                                return to_json(r);
                            }});
        } else if (t == "commutator") {
            const SymmetrySpec spec = parse_symmetry(b.value("symmetry"), b.path() + ".symmetry");
            const double beta = parse_beta(b.value("beta"), b.path() + ".beta").beta;
            std::size_t count = 100;
            std::uint64_t seed = 1;
            if (auto jn = b.optional_child("jets")) {
                count = jn->count("count", count);
                seed = jn->count("seed", seed);
                jn->done();
            }
            const double tol = b.number("tolerance", 1e-10);
            b.done();
            plan.push_back({t, [&opt, spec, beta, count, seed, tol](bool& pass) {
                                std::mt19937_64 gen(seed);
                                std::uniform_real_distribution<double> any(-2.0, 2.0), pos(0.3, 2.0);
                                std::vector<Jet2> jets(count);
                                for (auto& j : jets) {
                                    j[0] = any(gen);
                                    j[1] = pos(gen);
                                    for (std::size_t k = 2; k < 6; ++k) j[k] = any(gen);
                                }
                                const auto r = commutator_residual(spec, beta, jets);
                                pass = r.max_abs <= tol * r.scale;
                                say(opt, "commutator " + spec.label() + ": max " + fmt(r.max_abs) + " vs " +
                                             fmt(tol) + " * scale " + fmt(r.scale) + (pass ? " PASS" : " FAIL"));
                                return json{{"max_abs", r.max_abs}, {"scale", r.scale}, {"tolerance", tol},
                                            {"jets", count}, {"seed", seed}, {"pass", pass}};
                            }});
        } else {
            throw ConfigError(path + "." + t, "unknown study (residual, conservation, symmetry, commutator)");
        }
    }

    Outcome out;
    json results = json::array();
    bool all = true;
    for (const auto& s : plan) {
        bool pass = false;
        json r = s.run(pass);
        r["study"] = s.kind;
        r["pass"] = pass;
        results.push_back(std::move(r));
        all = all && pass;
    }
    if (fam) out.results["family"] = fam->name;
    out.results["studies"] = std::move(results);
    out.results["pass"] = all;
    if (!all) out.code = ExitVerificationFailure;
    return out;
}

// ---------------------------------------------------------------------------
// simulate / convergence

struct SimSetup {
    std::string system;
    ShearModulus modulus;
    double beta = 0.0;
    json beta_info;
    Grid1D grid;
    SimulationConfig scheme;
    std::vector<std::string> names;
    std::function<std::vector<double>(double)> initial;
    /// Exact state at (x, evolution coordinate) when the initial data has a closed-form evolution.
    std::function<std::vector<double>(double, double)> oracle;
    /// Profile whose characteristics steepen (scalar law or plane polarization).
    std::optional<ProfileFunction> steepening;

    StateGrid init(const Grid1D& g) const { return StateGrid::sample(g, names, initial); }

    Trajectory run(const Grid1D& g) const {
        const StateGrid s = init(g);
        if (system == "full") return evolve_full(modulus, s, scheme);
        if (system == "asymptotic") return evolve_asymptotic(beta, s, scheme);
        return evolve_scalar(beta, s, scheme);
    }
};

std::vector<double> full_vec(const FullState& s) { return {s.U, s.M, s.V, s.N}; }

SimSetup parse_setup(const Node& cfg, bool grid_needs_n) {
    SimSetup s;
    s.system = cfg.text("system");
    if (s.system == "full") {
        s.modulus = parse_modulus(cfg.value("modulus"), "modulus");
        s.names = {"U", "M", "V", "N"};
    } else if (s.system == "asymptotic" || s.system == "scalar") {
        const auto c = parse_beta(cfg.value("beta"), "beta");
        s.beta = c.beta;
        s.beta_info = {{"beta", c.beta}};
        if (c.derivation)
            s.beta_info["derived_from"] = {{"mu0", c.derivation->mu0},
                                           {"mu1", c.derivation->mu1},
                                           {"rho", c.derivation->rho},
                                           {"convention", to_string(c.derivation->convention)}};
        s.names = s.system == "asymptotic" ? std::vector<std::string>{"U", "V"} : std::vector<std::string>{"rho"};
    } else {
        throw ConfigError("system", "expected full, asymptotic or scalar");
    }
    s.grid = parse_grid(cfg.value("grid"), "grid", !grid_needs_n);
    s.scheme = parse_scheme(cfg.value("scheme"), "scheme");

    const Node in = cfg.child("initial");
    const std::string t = in.tag();
    const Node b = in.child(t);
    const std::string p = b.path();
    const double t0 = s.scheme.start;

    if (t == "zero") {
        const std::size_t k = s.names.size();
        s.initial = [k](double) { return std::vector<double>(k, 0.0); };
        s.oracle = [k](double, double) { return std::vector<double>(k, 0.0); };
    } else if (s.system == "full" && t == "carroll") {
        const CarrollWave w(s.modulus, b.positive("amplitude"), b.positive("wavenumber"), b.sign("sign", +1));
        s.initial = [w, t0](double x) { return full_vec(eval_carroll_full(w, x, t0)); };
        s.oracle = [w](double x, double t) { return full_vec(eval_carroll_full(w, x, t)); };
    } else if (s.system == "full" && t == "generalized_carroll") {
        GeneralizedCarroll g{s.modulus, b.positive("amplitude"), parse_profile(b.value("profile"), p + ".profile"),
                             b.sign("direction", -1), b.sign("polarization", +1)};
        s.initial = [g, t0](double x) { return full_vec(eval_generalized_carroll_full(g, x, t0)); };
        s.oracle = [g](double x, double t) { return full_vec(eval_generalized_carroll_full(g, x, t)); };
    } else if (s.system == "full" && t == "dalembert") {
        const DalembertSolution d{std::sqrt(eval_Q(s.modulus, 0.0) / s.modulus.rho),
                                  parse_profile(b.value("U0"), p + ".U0"), parse_profile(b.value("V0"), p + ".V0"),
                                  parse_profile(b.value("M0"), p + ".M0"), parse_profile(b.value("N0"), p + ".N0")};
        s.oracle = [d, t0](double x, double t) { return full_vec(eval_dalembert(d, x, t - t0)); };
        s.initial = [d](double x) { return full_vec(eval_dalembert(d, x, 0.0)); };
    } else if (s.system == "full" && t == "fields") {
        const ProfileFunction U = parse_profile(b.value("U"), p + ".U"), V = parse_profile(b.value("V"), p + ".V"),
                              M = parse_profile(b.value("M"), p + ".M"), N = parse_profile(b.value("N"), p + ".N");
        s.initial = [U, V, M, N](double x) { return std::vector<double>{U(x), M(x), V(x), N(x)}; };
    } else if (s.system == "asymptotic" && t == "asymptotic_linear") {
        const double A = b.positive("amplitude");
        const ProfileFunction th = parse_profile(b.value("theta"), p + ".theta");
        const double beta = s.beta;
        auto at = [beta, A, th](double tau, double X) {
            const StrainState st = eval_asymptotic_linear(beta, A, th, X, tau);
            return std::vector<double>{st.U, st.V};
        };
        s.initial = [at, t0](double tau) { return at(tau, t0); };
        s.oracle = at;
    } else if (s.system == "asymptotic" && t == "plane") {
        const ProfileFunction U = parse_profile(b.value("U"), p + ".U");
        s.initial = [U](double tau) { return std::vector<double>{U(tau), 0.0}; };
        s.steepening = U;
    } else if (s.system == "asymptotic" && t == "fields") {
        const ProfileFunction U = parse_profile(b.value("U"), p + ".U"), V = parse_profile(b.value("V"), p + ".V");
        s.initial = [U, V](double tau) { return std::vector<double>{U(tau), V(tau)}; };
    } else if (s.system == "scalar" && t == "simple_wave") {
        const ProfileFunction phi = parse_profile(b.value("phi"), p + ".phi");
        const double beta = s.beta;
        s.initial = [phi](double tau) { return std::vector<double>{phi(tau)}; };
        s.oracle = [beta, phi, t0](double tau, double X) {
            return std::vector<double>{eval_simple_wave(beta, phi, X - t0, tau)};
        };
        s.steepening = phi;
    } else {
        throw ConfigError(p, "initial data '" + t + "' is not available for the " + s.system + " system");
    }
    b.done();
    return s;
}

json oracle_check(const SimSetup& s, const Snapshot& snap) {
    if (!s.oracle) return nullptr;
    json per = json::object();
    try {
        const StateGrid ex = StateGrid::sample(snap.state.grid, s.names,
                                               [&](double x) { return s.oracle(x, snap.coordinate); });
        double worst = 0.0;
        for (const auto& name : s.names) {
            double e = 0.0;
            const auto& a = snap.state.field(name);
            const auto& b = ex.field(name);
            for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
            per[name] = e;
            worst = std::max(worst, e);
        }
        return {{"coordinate", snap.coordinate}, {"linf", per}, {"max_linf", worst}};
    } catch (const Error& e) {
        return {{"coordinate", snap.coordinate}, {"unavailable", e.what()}, {"locus", e.locus()}};
    }
}

Outcome cmd_simulate(const Node& cfg, const Options& opt) {
    const SimSetup s = parse_setup(cfg, true);
    cfg.done();
    s.grid.validate();
    s.scheme.validate();

    Outcome out;
    out.results["system"] = s.system;
    out.results["scheme"] = to_string(s.scheme.scheme);
    out.results["boundary"] = to_string(s.grid.boundary);
    if (!s.beta_info.is_null()) out.results["coefficients"] = s.beta_info;
    if (s.steepening) {
        std::vector<double> taus(s.grid.n);
        for (std::size_t i = 0; i < taus.size(); ++i) taus[i] = s.grid.center(i);
        out.results["breaking_estimate"] = number(breaking_estimate(s.beta, *s.steepening, taus));
    }

    const Trajectory tr = s.run(s.grid);

    {
        std::vector<std::string> header{"coordinate", "x"};
        header.insert(header.end(), s.names.begin(), s.names.end());
        CsvWriter w(opt.out / "snapshots.csv", header);
        for (const auto& snap : tr.snapshots)
            for (std::size_t i = 0; i < snap.state.grid.n; ++i) {
                std::vector<double> row{snap.coordinate, snap.state.grid.center(i)};
                for (const auto& f : snap.state.fields) row.push_back(f[i]);
                w.row(row);
            }
        out.artifacts.push_back("snapshots.csv");
    }
    json series = {{"coordinate", json::array()}, {"step", json::array()}, {"max_speed", json::array()},
                   {"max_gradient", json::array()}};
    {
        std::vector<std::string> header{"coordinate", "step", "max_speed", "max_gradient"};
        for (const auto& n : s.names) header.push_back("tv_" + n);
        CsvWriter w(opt.out / "diagnostics.csv", header);
        for (const auto& d : tr.diagnostics) {
            std::vector<double> row{d.coordinate, d.step, d.max_speed, d.max_gradient};
            row.insert(row.end(), d.total_variation.begin(), d.total_variation.end());
            w.row(row);
            series["coordinate"].push_back(d.coordinate);
            series["step"].push_back(d.step);
            series["max_speed"].push_back(d.max_speed);
            series["max_gradient"].push_back(d.max_gradient);
        }
        out.artifacts.push_back("diagnostics.csv");
    }
    out.results["steps"] = tr.steps;
    out.results["final_coordinate"] = tr.final().coordinate;
    out.results["snapshots"] = tr.snapshots.size();
    out.results["initial_max_gradient"] = tr.initial_max_gradient;
    out.results["initial_total_variation"] = tr.initial_total_variation;
    out.results["blowup_coordinate"] = tr.blowup_coordinate ? json(*tr.blowup_coordinate) : json(nullptr);
    out.results["diagnostics"] = std::move(series);
    out.results["oracle_check"] = oracle_check(s, tr.final());

    say(opt, s.system + " system, " + to_string(s.scheme.scheme) + ", n=" + std::to_string(s.grid.n) + ": " +
                 std::to_string(tr.steps) + " steps to " + fmt(tr.final().coordinate));
    if (tr.blowup_coordinate) say(opt, "gradient monitor tripped at " + fmt(*tr.blowup_coordinate));
    if (out.results["oracle_check"].contains("max_linf"))
        say(opt, "max error against the exact solution: " + fmt(out.results["oracle_check"]["max_linf"].get<double>()));
    return out;
}

Outcome cmd_convergence(const Node& cfg, const Options& opt) {
    const SimSetup s = parse_setup(cfg, false);
    const std::vector<double> raw_levels = cfg.numbers("levels");
    if (!cfg.has("oracle")) throw ConfigError("oracle", "required key is missing (exact or self)");
    const std::string oracle = cfg.text("oracle");
    const double target = cfg.number("target_order");
    const double tol = cfg.positive("tolerance", 0.3);
    const std::string norm = cfg.text("norm", "linf");
    cfg.done();
    if (norm != "linf" && norm != "l2") throw ConfigError("norm", "expected linf or l2");
    std::vector<std::size_t> levels;
    for (double v : raw_levels) {
        if (!(v >= 8) || v != std::floor(v)) throw ConfigError("levels", "entries must be integers >= 8");
        levels.push_back(static_cast<std::size_t>(v));
    }
    if (oracle != "exact" && oracle != "self") throw ConfigError("oracle", "expected exact or self");
    if (oracle == "exact" && !s.oracle)
        throw ConfigError("oracle", "the initial data has no closed-form evolution; use \"self\"");
    s.scheme.validate();

    auto grid_at = [&](std::size_t n) {
        Grid1D g = s.grid;
        g.n = n;
        return g;
    };
    const RunFactory run = [&](std::size_t n) { return s.run(grid_at(n)).final().state; };
    ConvergenceReport r;
    if (oracle == "exact") {
        const OracleFactory ex = [&](std::size_t n) {
            return StateGrid::sample(grid_at(n), s.names, [&](double x) { return s.oracle(x, s.scheme.end); });
        };
        r = convergence_study(run, ex, levels);
    } else {
        r = convergence_study_self(run, levels);
    }
    const double order = norm == "linf" ? r.order_linf : r.order_l2;
    const bool pass = std::abs(order - target) <= tol;

    CsvWriter w(opt.out / "convergence.csv", {"n", "h", "linf", "l2"});
    for (const auto& l : r.levels) w.row({static_cast<double>(l.n), l.h, l.linf, l.l2});

    Outcome out;
    out.artifacts.push_back("convergence.csv");
    out.results = to_json(r);
    out.results["oracle"] = oracle;
    out.results["norm"] = norm;
    out.results["target_order"] = target;
    out.results["tolerance"] = tol;
    out.results["order"] = number(order);
    out.results["pass"] = pass;
    for (const auto& l : r.levels)
        say(opt, "n=" + std::to_string(l.n) + "  linf=" + fmt(l.linf) + "  l2=" + fmt(l.l2));
    say(opt, "observed " + norm + " order " + fmt(order) + " vs target " + fmt(target) + " +- " + fmt(tol) +
                 (pass ? " PASS" : " FAIL"));
    if (!pass) out.code = ExitVerificationFailure;
    return out;
}

// ---------------------------------------------------------------------------
// classify

Outcome cmd_classify(const Node& cfg, const Options& opt) {
    const TempleFlux flux = parse_flux(cfg.value("flux"), "flux");
    std::optional<BivariateFunction> chart;
    if (cfg.has("chart")) chart = parse_chart(cfg.value("chart"), "chart");
    std::vector<Vec2> pts;
    if (cfg.has("points")) {
        const auto& a = cfg.value("points");
        if (!a.is_array()) throw ConfigError("points", "expected an array of [u, v] pairs");
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string p = "points[" + std::to_string(i) + "]";
            if (!a[i].is_array() || a[i].size() != 2) throw ConfigError(p, "expected [u, v]");
            pts.push_back({as_number(a[i][0], p), as_number(a[i][1], p)});
        }
    }
    if (auto sn = cfg.optional_child("samples")) {
        const Interval u = parse_bracket(sn->value("u"), "samples.u"), v = parse_bracket(sn->value("v"), "samples.v");
        const std::size_t count = sn->count("count", 8);
        sn->done();
        if (count < 2) throw ConfigError("samples.count", "needs at least 2");
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t k = 0; k < count; ++k)
                pts.push_back({u.lo + (u.hi - u.lo) * double(i) / double(count - 1),
                               v.lo + (v.hi - v.lo) * double(k) / double(count - 1)});
    }
    cfg.done();
    if (pts.empty()) throw ConfigError("samples", "give samples or points");

    const ClassificationReport rep = classify(flux, pts, chart);
    double linear = 0.0;
    json eig = json::array();
    for (const auto& p : pts) {
        const auto g = flux.gradient(p[0], p[1]);
        linear = std::max(linear, std::hypot(g[0], g[1]) / std::max(1.0, std::abs(flux(p[0], p[1]))));
        const EigenReport e = temple_eigen(flux, p[0], p[1]);
        eig.push_back({{"u", e.u}, {"v", e.v}, {"lambda1", e.lambda1}, {"lambda2", e.lambda2},
                       {"d1", {e.d1[0], e.d1[1]}}, {"d2", {e.d2[0], e.d2[1]}}, {"ld1", e.ld1}, {"ld2", e.ld2},
                       {"d1_projective", e.d1_projective}, {"d2_projective", e.d2_projective}});
    }
    const Flag lin = decide_flag(linear);

    Outcome out;
    out.results = {{"flux", flux.label()},
                   {"sample_count", rep.sample_count},
                   {"equal_eigenvalues", to_json(rep.equal_eigenvalues)},
                   {"completely_exceptional", to_json(rep.completely_exceptional)},
                   {"hamiltonian", to_json(rep.hamiltonian)},
                   {"decouples", to_json(rep.decouples)},
                   {"linear_case", {{"flag", to_string(lin)}, {"residual", linear}}},
                   {"eigen", eig}};
    write_json(opt.out / "classification.json", out.results);
    out.artifacts.push_back("classification.json");
    auto line = [&](const char* name, const ClassificationReport::Entry& e) {
        say(opt, std::string(name) + ": " + (e.evaluated ? to_string(e.flag) + " (" + fmt(e.residual) + ")" : "not evaluated"));
    };
    line("equal_eigenvalues", rep.equal_eigenvalues);
    line("completely_exceptional", rep.completely_exceptional);
    line("hamiltonian", rep.hamiltonian);
    line("decouples", rep.decouples);
    say(opt, "linear_case: " + to_string(lin) + " (" + fmt(linear) + ")");
    return out;
}

Outcome dispatch(const std::string& command, const Node& cfg, const Options& opt) {
    if (command == "simulate") return cmd_simulate(cfg, opt);
    if (command == "exact") return cmd_exact(cfg, opt);
    if (command == "hodograph") return cmd_hodograph(cfg, opt);
    if (command == "classify") return cmd_classify(cfg, opt);
    if (command == "verify") return cmd_verify(cfg, opt);
    if (command == "convergence") return cmd_convergence(cfg, opt);
    throw ConfigError("command", "unknown command '" + command + "'");
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"simulate", "exact", "classify", "hodograph", "verify", "convergence"};
    return names;
}

int run_command(const std::string& command, const json& config, const Options& options) {
    std::error_code ec;
    std::filesystem::create_directories(options.out, ec);
    if (ec) {
        std::cerr << "cannot create output directory " << options.out << ": " << ec.message() << '\n';
        return ExitSolverError;
    }
    set_thread_count(options.threads);

    json manifest = {{"command", command}, {"config", config}, {"threads", options.threads}};
    Outcome out;
    json error = nullptr;
    try {
        if (!config.is_object()) throw ConfigError("<root>", "expected a JSON object");
        const Node cfg(config, "");
        const std::string declared = cfg.text("command", command);
        if (declared != command)
            throw ConfigError("command", "config declares '" + declared + "' but '" + command + "' was requested");
        out = dispatch(command, cfg, options);
    } catch (const ConfigError& e) {
        out.code = ExitConfigError;
        error = {{"kind", "config"}, {"path", e.path()}, {"message", e.what()}};
    } catch (const Error& e) {
        out.code = e.code() == ErrorCode::InvalidArgument ? ExitConfigError : ExitSolverError;
        error = {{"kind", "solver"}, {"code", std::string(to_string(e.code()))}, {"message", e.what()},
                 {"locus", e.locus()}};
    } catch (const std::exception& e) {
        out.code = ExitSolverError;
        error = {{"kind", "runtime"}, {"message", e.what()}};
    }
    if (!error.is_null()) {
        std::cerr << "error: " << error["message"].get<std::string>();
        if (error.contains("locus") && !error["locus"].get<std::string>().empty())
            std::cerr << " at " << error["locus"].get<std::string>();
        std::cerr << '\n';
    }

    static const char* status[] = {"ok", "verification_failure", "config_error", "solver_error"};
    manifest["exit_code"] = out.code;
    manifest["status"] = status[out.code];
    manifest["error"] = error;
    manifest["results"] = out.results;
    out.artifacts.push_back("config.json");
    manifest["artifacts"] = out.artifacts;
    manifest["rerun"] = "shearwave-cli " + command + " --config config.json --threads " +
                        std::to_string(options.threads);
    try {
        json cfg_copy = config;
        if (cfg_copy.is_object()) cfg_copy["command"] = command;
        write_json(options.out / "config.json", cfg_copy);
        write_json(options.out / "manifest.json", manifest);
    } catch (const std::exception& e) {
        std::cerr << "cannot write manifest: " << e.what() << '\n';
        return ExitSolverError;
    }
    return out.code;
}

int run_command_file(const std::string& command, const std::filesystem::path& config, const Options& options) {
    json j;
    try {
        j = read_json(config);
    } catch (const std::exception& e) {
        std::cerr << "error: cannot read config " << config << ": " << e.what() << '\n';
        return ExitConfigError;
    }
    return run_command(command, j, options);
}

}  // namespace shearwave::app
