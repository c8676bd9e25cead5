#include "shearwave/lattice.hpp"

#include "shearwave/errors.hpp"

namespace shearwave {

Axis Axis::spanning(double a, double b, std::size_t count) {
    if (count < 2) throw Error(ErrorCode::InvalidArgument, "an axis needs at least two points");
    return {a, (b - a) / static_cast<double>(count - 1), count};
}

Axis Axis::refined() const { return {start, 0.5 * step, 2 * (count - 1) + 1}; }

Sheet sample(const Lattice& lattice, const std::function<double(double, double)>& f) {
    Sheet s(lattice);
    for (std::size_t r = 0; r < s.rows(); ++r) {
        const double e = lattice.evolution.at(r);
        for (std::size_t c = 0; c < s.cols(); ++c) s(r, c) = f(e, lattice.space.at(c));
    }
    return s;
}

}  // namespace shearwave
