#include "shearwave/functions.hpp"

#include "shearwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace shearwave {

ScalarFunction::ScalarFunction(Fn f, Fn df, Fn d2f, std::string label)
    : f_(std::move(f)), df_(std::move(df)), d2f_(std::move(d2f)), label_(std::move(label)) {
    if (!f_) throw Error(ErrorCode::InvalidArgument, "scalar function without a body");
}

double ScalarFunction::derivative(double x) const {
    if (df_) return df_(x);
    const double h = fd_step(x);
    return (f_(x + h) - f_(x - h)) / (2.0 * h);
}

double ScalarFunction::second_derivative(double x) const {
    if (d2f_) return d2f_(x);
    if (df_) {
        const double h = fd_step(x);
        return (df_(x + h) - df_(x - h)) / (2.0 * h);
    }
    const double h = 1e-4 * std::max(1.0, std::abs(x));
    return (f_(x + h) - 2.0 * f_(x) + f_(x - h)) / (h * h);
}

ScalarFunction ScalarFunction::constant(double c) {
    std::ostringstream os;
    os << "const(" << c << ")";
    return ScalarFunction([c](double) { return c; }, [](double) { return 0.0; },
                          [](double) { return 0.0; }, os.str());
}

ScalarFunction ScalarFunction::linear(double k, double c0) {
    std::ostringstream os;
    os << "linear(" << k << ", " << c0 << ")";
    return ScalarFunction([k, c0](double x) { return k * x + c0; }, [k](double) { return k; },
                          [](double) { return 0.0; }, os.str());
}

ScalarFunction ScalarFunction::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    std::ostringstream os;
    os << "poly(";
    for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? ", " : "") << coeffs[i];
    os << ")";
    // Horner for the value and both derivatives at once.
    auto eval = [coeffs](double x, int order) {
        double p = 0.0, dp = 0.0, d2p = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            d2p = d2p * x + 2.0 * dp;
            dp = dp * x + p;
            p = p * x + *it;
        }
        return order == 0 ? p : (order == 1 ? dp : d2p);
    };
    return ScalarFunction([eval](double x) { return eval(x, 0); },
                          [eval](double x) { return eval(x, 1); },
                          [eval](double x) { return eval(x, 2); }, os.str());
}

ScalarFunction ScalarFunction::sine(double amp, double freq, double offset) {
    std::ostringstream os;
    os << "sine(" << amp << ", " << freq << ", " << offset << ")";
    return ScalarFunction(
        [=](double x) { return amp * std::sin(freq * x) + offset; },
        [=](double x) { return amp * freq * std::cos(freq * x); },
        [=](double x) { return -amp * freq * freq * std::sin(freq * x); }, os.str());
}

ScalarFunction ScalarFunction::cosine(double amp, double freq, double offset) {
    std::ostringstream os;
    os << "cosine(" << amp << ", " << freq << ", " << offset << ")";
    return ScalarFunction(
        [=](double x) { return amp * std::cos(freq * x) + offset; },
        [=](double x) { return -amp * freq * std::sin(freq * x); },
        [=](double x) { return -amp * freq * freq * std::cos(freq * x); }, os.str());
}

ScalarFunction compose(const ScalarFunction& outer, const ScalarFunction& inner) {
    return ScalarFunction(
        [outer, inner](double x) { return outer(inner(x)); },
        [outer, inner](double x) { return outer.derivative(inner(x)) * inner.derivative(x); },
        [outer, inner](double x) {
            const double d = inner.derivative(x);
            return outer.second_derivative(inner(x)) * d * d +
                   outer.derivative(inner(x)) * inner.second_derivative(x);
        },
        outer.label() + " o " + inner.label());
}

BivariateFunction::BivariateFunction(Fn f, GradFn grad, HessFn hess, std::string label)
    : f_(std::move(f)), grad_(std::move(grad)), hess_(std::move(hess)), label_(std::move(label)) {
    if (!f_) throw Error(ErrorCode::InvalidArgument, "bivariate function without a body");
}

std::array<double, 2> BivariateFunction::gradient(double u, double v) const {
    if (grad_) return grad_(u, v);
    const double hu = fd_step(u), hv = fd_step(v);
    return {(f_(u + hu, v) - f_(u - hu, v)) / (2.0 * hu),
            (f_(u, v + hv) - f_(u, v - hv)) / (2.0 * hv)};
}

std::array<double, 3> BivariateFunction::hessian(double u, double v) const {
    if (hess_) return hess_(u, v);
    if (grad_) {
        const double hu = fd_step(u), hv = fd_step(v);
        const auto gup = grad_(u + hu, v), gum = grad_(u - hu, v);
        const auto gvp = grad_(u, v + hv), gvm = grad_(u, v - hv);
        const double fuu = (gup[0] - gum[0]) / (2.0 * hu);
        const double fvv = (gvp[1] - gvm[1]) / (2.0 * hv);
        const double fuv = 0.5 * ((gup[1] - gum[1]) / (2.0 * hu) + (gvp[0] - gvm[0]) / (2.0 * hv));
        return {fuu, fuv, fvv};
    }
    const double hu = 1e-4 * std::max(1.0, std::abs(u));
    const double hv = 1e-4 * std::max(1.0, std::abs(v));
    const double f0 = f_(u, v);
    const double fuu = (f_(u + hu, v) - 2.0 * f0 + f_(u - hu, v)) / (hu * hu);
    const double fvv = (f_(u, v + hv) - 2.0 * f0 + f_(u, v - hv)) / (hv * hv);
    const double fuv = (f_(u + hu, v + hv) - f_(u + hu, v - hv) - f_(u - hu, v + hv) +
                        f_(u - hu, v - hv)) /
                       (4.0 * hu * hv);
    return {fuu, fuv, fvv};
}

}  // namespace shearwave
