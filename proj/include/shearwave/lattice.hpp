#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace shearwave {

/// Uniformly spaced sample coordinates start + i * step, i < count.
struct Axis {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 0;

    double at(std::size_t i) const noexcept { return start + static_cast<double>(i) * step; }
    double last() const noexcept { return at(count - 1); }

    /// count points spanning [a, b] inclusive.
    static Axis spanning(double a, double b, std::size_t count);
    /// The nested axis with half the spacing over the same span.
    Axis refined() const;
};

/// Rectangular sampling lattice. Rows follow the evolution coordinate (t or X),
/// columns the spatial one (x or tau).
struct Lattice {
    Axis evolution;
    Axis space;

    std::size_t size() const noexcept { return evolution.count * space.count; }
    Lattice refined() const { return {evolution.refined(), space.refined()}; }
};

/// Scalar field sampled on a lattice, row-major in (evolution, space).
class Sheet {
public:
    Sheet() = default;
    explicit Sheet(Lattice lattice, double fill = 0.0)
        : lattice_(lattice), values_(lattice.size(), fill) {}

    const Lattice& lattice() const noexcept { return lattice_; }
    std::size_t rows() const noexcept { return lattice_.evolution.count; }
    std::size_t cols() const noexcept { return lattice_.space.count; }

    double& operator()(std::size_t row, std::size_t col) { return values_[row * cols() + col]; }
    double operator()(std::size_t row, std::size_t col) const { return values_[row * cols() + col]; }

    const std::vector<double>& values() const noexcept { return values_; }
    std::vector<double>& values() noexcept { return values_; }

private:
    Lattice lattice_;
    std::vector<double> values_;
};

/// Fills a sheet with f(evolution, space).
Sheet sample(const Lattice& lattice, const std::function<double(double, double)>& f);

/// (theta, rho) fields on an (X, tau) lattice.
struct PolarField {
    Sheet theta;
    Sheet rho;
};

/// (U, V, M, N) fields on an (t, x) lattice.
struct FullField {
    Sheet U;
    Sheet V;
    Sheet M;
    Sheet N;
};

/// (U, V) fields on an (t, x) or (X, tau) lattice.
struct StrainField {
    Sheet U;
    Sheet V;
};

}  // namespace shearwave
