#pragma once

#include "shearwave/analysis.hpp"
#include "shearwave/constitutive.hpp"
#include "shearwave/functions.hpp"
#include "shearwave/lattice.hpp"
#include "shearwave/simulate.hpp"

#include "json.hpp"

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace shearwave::app {

using json = nlohmann::json;

/// Schema violation in a run configuration; path names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Read-only view of one JSON object that records which keys were consumed.
class Node {
public:
    Node(const json& j, std::string path);

    const std::string& path() const noexcept { return path_; }
    const json& raw() const noexcept { return *j_; }
    bool has(const std::string& key) const;

    Node child(const std::string& key) const;
    std::optional<Node> optional_child(const std::string& key) const;
    const json& value(const std::string& key) const;
    const json* optional_value(const std::string& key) const;

    double number(const std::string& key) const;
    double number(const std::string& key, double fallback) const;
    double positive(const std::string& key) const;
    double positive(const std::string& key, double fallback) const;
    std::size_t count(const std::string& key) const;
    std::size_t count(const std::string& key, std::size_t fallback) const;
    int sign(const std::string& key, int fallback) const;
    bool flag(const std::string& key, bool fallback) const;
    std::string text(const std::string& key) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    std::vector<double> numbers(const std::string& key) const;

    /// The single key of a one-entry object (tagged union), marked consumed.
    std::string tag() const;

    /// Throws ConfigError naming the first key that was never read.
    void done() const;

private:
    std::string sub(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    void mark(const std::string& key) const { used_->insert(key); }

    const json* j_;
    std::string path_;
    std::shared_ptr<std::set<std::string>> used_;
};

double as_number(const json& j, const std::string& path);

/// {"const": c} | {"linear": {k, c0}} | {"sine"|"cosine": {amp, freq, offset}} |
/// {"poly": [c0, c1, ...]} | {"compose": [outer, inner]}
ProfileFunction parse_profile(const json& j, const std::string& path);

/// {"mooney_rivlin": {mu}} | {"cubic": {mu0, mu1}} | {"power": {mu, n}} |
/// {"poly": [...]}, plus an optional "rho" (default 1).
ShearModulus parse_modulus(const json& j, const std::string& path);

/// {"constant": {mu}} | {"product": {}} | {"ratio": {}} | {"radial": {}} |
/// {"asymptotic": {beta}} | {"poly": [[...]]} | {"product_form": profile} |
/// {"ratio_form": profile}
TempleFlux parse_flux(const json& j, const std::string& path);

/// Either a number or {"mu0", "mu1", "rho", "convention"}.
AsymptoticCoefficients parse_beta(const json& j, const std::string& path);

/// {"n", "a", "b", "boundary"}; n may be omitted when allow_missing_n.
Grid1D parse_grid(const json& j, const std::string& path, bool allow_missing_n = false);

/// {"name", "cfl", "start", "end", "snapshot_stride", "blowup_factor", "stop_at_blowup"}
SimulationConfig parse_scheme(const json& j, const std::string& path);

/// {"start", "stop", "count"}
Axis parse_axis(const json& j, const std::string& path);
/// {"evolution": axis, "space": axis}
Lattice parse_lattice(const json& j, const std::string& path);

/// "product" | {"exp_difference": {a, c}}
BivariateFunction parse_chart(const json& j, const std::string& path);

}  // namespace shearwave::app
