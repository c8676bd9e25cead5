#include "config.hpp"

#include "shearwave/errors.hpp"

#include <cmath>
#include <numbers>

namespace shearwave::app {

Node::Node(const json& j, std::string path)
    : j_(&j), path_(std::move(path)), used_(std::make_shared<std::set<std::string>>()) {
    if (!j.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
}

bool Node::has(const std::string& key) const { return j_->contains(key); }

const json& Node::value(const std::string& key) const {
    if (!has(key)) throw ConfigError(sub(key), "required key is missing");
    mark(key);
    return (*j_)[key];
}

const json* Node::optional_value(const std::string& key) const {
    if (!has(key)) return nullptr;
    mark(key);
    return &(*j_)[key];
}

Node Node::child(const std::string& key) const { return Node(value(key), sub(key)); }

std::optional<Node> Node::optional_child(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return child(key);
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
    return v;
}

double Node::number(const std::string& key) const { return as_number(value(key), sub(key)); }

double Node::number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

double Node::positive(const std::string& key) const {
    const double v = number(key);
    if (!(v > 0.0)) throw ConfigError(sub(key), "must be positive");
    return v;
}

double Node::positive(const std::string& key, double fallback) const {
    return has(key) ? positive(key) : fallback;
}

std::size_t Node::count(const std::string& key) const {
    const auto& v = value(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(sub(key), "expected a nonnegative integer");
    return v.get<std::size_t>();
}

std::size_t Node::count(const std::string& key, std::size_t fallback) const {
    return has(key) ? count(key) : fallback;
}

int Node::sign(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const auto& v = value(key);
    if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1))
        throw ConfigError(sub(key), "expected +1 or -1");
    return v.get<int>();
}

bool Node::flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& v = value(key);
    if (!v.is_boolean()) throw ConfigError(sub(key), "expected true or false");
    return v.get<bool>();
}

std::string Node::text(const std::string& key) const {
    const auto& v = value(key);
    if (!v.is_string()) throw ConfigError(sub(key), "expected a string");
    return v.get<std::string>();
}

std::string Node::text(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
}

std::vector<double> Node::numbers(const std::string& key) const {
    const auto& v = value(key);
    if (!v.is_array()) throw ConfigError(sub(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], sub(key) + "[" + std::to_string(i) + "]"));
    return out;
}

std::string Node::tag() const {
    if (j_->size() != 1) throw ConfigError(path_, "expected exactly one key selecting a variant");
    const std::string k = j_->begin().key();
    mark(k);
    return k;
}

void Node::done() const {
    for (auto it = j_->begin(); it != j_->end(); ++it)
        if (!used_->count(it.key())) throw ConfigError(sub(it.key()), "unknown key");
}

ProfileFunction parse_profile(const json& j, const std::string& path) {
    if (j.is_number()) return ProfileFunction::constant(as_number(j, path));
    const Node n(j, path);
    const std::string t = n.tag();
    const std::string p = path + "." + t;
    if (t == "const") return ProfileFunction::constant(as_number(n.value(t), p));
    if (t == "poly") {
        const auto c = n.numbers(t);
        if (c.empty()) throw ConfigError(p, "needs at least one coefficient");
        return ProfileFunction::polynomial(c);
    }
    if (t == "compose") {
        const auto& a = n.value(t);
        if (!a.is_array() || a.size() != 2) throw ConfigError(p, "expected [outer, inner]");
        return compose(parse_profile(a[0], p + "[0]"), parse_profile(a[1], p + "[1]"));
    }
    const Node b = n.child(t);
    ProfileFunction out;
    if (t == "linear") {
        out = ProfileFunction::linear(b.number("k"), b.number("c0", 0.0));
    } else if (t == "sine" || t == "cosine") {
        const double amp = b.number("amp"), freq = b.number("freq"), off = b.number("offset", 0.0);
        out = t == "sine" ? ProfileFunction::sine(amp, freq, off) : ProfileFunction::cosine(amp, freq, off);
    } else {
        throw ConfigError(p, "unknown profile (const, linear, sine, cosine, poly, compose)");
    }
    b.done();
    return out;
}

ShearModulus parse_modulus(const json& j, const std::string& path) {
    const Node n(j, path);
    const double rho = n.positive("rho", 1.0);
    std::string model;
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "rho") {
            if (!model.empty()) throw ConfigError(path, "more than one constitutive model given");
            model = it.key();
        }
    if (model.empty()) throw ConfigError(path, "no constitutive model given");
    const std::string p = path + "." + model;
    if (model == "poly") return ShearModulus::polynomial(n.numbers(model), rho);
    const Node b = n.child(model);
    ShearModulus m;
    if (model == "mooney_rivlin") {
        m = ShearModulus::mooney_rivlin(b.positive("mu"), rho);
    } else if (model == "cubic") {
        m = ShearModulus::cubic(b.positive("mu0"), b.number("mu1"), rho);
    } else if (model == "power") {
        m = ShearModulus::power(b.positive("mu"), b.number("n"), rho);
    } else {
        throw ConfigError(p, "unknown constitutive model (mooney_rivlin, cubic, power, poly)");
    }
    b.done();
    n.done();
    return m;
}

TempleFlux parse_flux(const json& j, const std::string& path) {
    const Node n(j, path);
    const std::string t = n.tag();
    const std::string p = path + "." + t;
    if (t == "poly") {
        const auto& rows = n.value(t);
        if (!rows.is_array()) throw ConfigError(p, "expected an array of coefficient rows");
        std::vector<std::vector<double>> c;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!rows[i].is_array()) throw ConfigError(p, "expected an array of coefficient rows");
            std::vector<double> row;
            for (std::size_t k = 0; k < rows[i].size(); ++k)
                row.push_back(as_number(rows[i][k], p + "[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
            c.push_back(std::move(row));
        }
        return TempleFlux::polynomial(std::move(c));
    }
    if (t == "product_form") return TempleFlux::product_form(parse_profile(n.value(t), p));
    if (t == "ratio_form") return TempleFlux::ratio_form(parse_profile(n.value(t), p));
    const Node b = n.child(t);
    TempleFlux f;
    if (t == "constant") {
        f = TempleFlux::constant(b.positive("mu"));
    } else if (t == "product") {
        f = TempleFlux::product();
    } else if (t == "ratio") {
        f = TempleFlux::ratio();
    } else if (t == "radial") {
        f = TempleFlux::radial();
    } else if (t == "asymptotic") {
        f = TempleFlux::asymptotic(b.number("beta"));
    } else {
        throw ConfigError(p, "unknown flux (constant, product, ratio, radial, asymptotic, poly, product_form, ratio_form)");
    }
    b.done();
    return f;
}

AsymptoticCoefficients parse_beta(const json& j, const std::string& path) {
    if (j.is_number()) return AsymptoticCoefficients::from_beta(as_number(j, path));
    const Node n(j, path);
    const std::string conv = n.text("convention", "speed");
    SpeedConvention c;
    if (conv == "speed")
        c = SpeedConvention::Speed;
    else if (conv == "squared_speed")
        c = SpeedConvention::SquaredSpeed;
    else
        throw ConfigError(path + ".convention", "expected speed or squared_speed");
    const double mu0 = n.positive("mu0"), mu1 = n.number("mu1"), rho = n.positive("rho", 1.0);
    n.done();
    return AsymptoticCoefficients::from_moduli(mu0, mu1, rho, c);
}

Grid1D parse_grid(const json& j, const std::string& path, bool allow_missing_n) {
    const Node n(j, path);
    Grid1D g;
    if (allow_missing_n && !n.has("n"))
        g.n = 8;
    else
        g.n = n.count("n");
    g.a = n.number("a", 0.0);
    g.b = n.number("b", 2.0 * std::numbers::pi);
    const std::string bc = n.text("boundary", "periodic");
    if (bc == "periodic")
        g.boundary = Boundary::Periodic;
    else if (bc == "outflow")
        g.boundary = Boundary::Outflow;
    else
        throw ConfigError(path + ".boundary", "expected periodic or outflow");
    n.done();
    if (g.n < 8) throw ConfigError(path + ".n", "grid needs at least 8 cells");
    if (!(g.b > g.a)) throw ConfigError(path + ".b", "must exceed a");
    return g;
}

SimulationConfig parse_scheme(const json& j, const std::string& path) {
    const Node n(j, path);
    SimulationConfig c;
    const std::string name = n.text("name", "lax_friedrichs");
    if (name == "lax_friedrichs")
        c.scheme = Scheme::LaxFriedrichs;
    else if (name == "muscl_minmod")
        c.scheme = Scheme::MusclMinmod;
    else
        throw ConfigError(path + ".name", "expected lax_friedrichs or muscl_minmod");
    c.cfl = n.number("cfl", c.cfl);
    c.start = n.number("start", 0.0);
    c.end = n.number("end");
    c.snapshot_stride = n.count("snapshot_stride", 0);
    c.blowup_factor = n.number("blowup_factor", c.blowup_factor);
    c.stop_at_blowup = n.flag("stop_at_blowup", false);
    n.done();
    if (!(c.cfl > 0.0 && c.cfl <= 0.9)) throw ConfigError(path + ".cfl", "must lie in (0, 0.9]");
    if (!(c.end > c.start)) throw ConfigError(path + ".end", "must exceed start");
    if (!(c.blowup_factor > 1.0)) throw ConfigError(path + ".blowup_factor", "must exceed 1");
    return c;
}

Axis parse_axis(const json& j, const std::string& path) {
    const Node n(j, path);
    const double a = n.number("start"), b = n.number("stop");
    const std::size_t count = n.count("count");
    n.done();
    if (count < 2) throw ConfigError(path + ".count", "needs at least 2 points");
    if (!(b > a)) throw ConfigError(path + ".stop", "must exceed start");
    return Axis::spanning(a, b, count);
}

Lattice parse_lattice(const json& j, const std::string& path) {
    const Node n(j, path);
    Lattice l{parse_axis(n.value("evolution"), path + ".evolution"), parse_axis(n.value("space"), path + ".space")};
    n.done();
    return l;
}

BivariateFunction parse_chart(const json& j, const std::string& path) {
    if (j.is_string()) {
        if (j.get<std::string>() == "product") return product_chart();
        throw ConfigError(path, "unknown chart (product, exp_difference)");
    }
    const Node n(j, path);
    const std::string t = n.tag();
    if (t != "exp_difference") throw ConfigError(path + "." + t, "unknown chart (product, exp_difference)");
    const Node b = n.child(t);
    auto c = exp_difference_chart(b.number("a"), b.number("c", 0.0));
    b.done();
    return c;
}

}  // namespace shearwave::app
