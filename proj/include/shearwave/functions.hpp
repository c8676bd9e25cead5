#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace shearwave {

/// Smooth scalar function of one variable with optional analytic derivatives.
/// Missing derivatives fall back to central differences with step
/// h = 1e-6 * max(1, |x|) (first) or 1e-4 * max(1, |x|) (second, from values).
class ScalarFunction {
public:
    using Fn = std::function<double(double)>;

    ScalarFunction() = default;
    explicit ScalarFunction(Fn f, Fn df = {}, Fn d2f = {}, std::string label = {});

    double operator()(double x) const { return f_(x); }
    double derivative(double x) const;
    double second_derivative(double x) const;

    bool has_analytic_derivative() const noexcept { return static_cast<bool>(df_); }
    bool valid() const noexcept { return static_cast<bool>(f_); }
    const std::string& label() const noexcept { return label_; }

    static ScalarFunction constant(double c);
    /// k * x + c0
    static ScalarFunction linear(double k, double c0 = 0.0);
    /// c[0] + c[1] x + c[2] x^2 + ...
    static ScalarFunction polynomial(std::vector<double> coeffs);
    /// amp * sin(freq * x) + offset
    static ScalarFunction sine(double amp, double freq, double offset = 0.0);
    /// amp * cos(freq * x) + offset
    static ScalarFunction cosine(double amp, double freq, double offset = 0.0);

private:
    Fn f_, df_, d2f_;
    std::string label_;
};

/// outer(inner(x)); derivatives by the chain rule.
ScalarFunction compose(const ScalarFunction& outer, const ScalarFunction& inner);

/// The arbitrary one-variable profiles (F, Theta, Phi, s3, s4, ...) used by the
/// exact solution families.
using ProfileFunction = ScalarFunction;

/// Smooth function of (u, v) with optional analytic gradient and Hessian.
class BivariateFunction {
public:
    using Fn = std::function<double(double, double)>;
    using GradFn = std::function<std::array<double, 2>(double, double)>;
    /// (f_uu, f_uv, f_vv)
    using HessFn = std::function<std::array<double, 3>(double, double)>;

    BivariateFunction() = default;
    explicit BivariateFunction(Fn f, GradFn grad = {}, HessFn hess = {}, std::string label = {});

    double operator()(double u, double v) const { return f_(u, v); }
    std::array<double, 2> gradient(double u, double v) const;
    std::array<double, 3> hessian(double u, double v) const;

    bool has_analytic_gradient() const noexcept { return static_cast<bool>(grad_); }
    bool has_analytic_hessian() const noexcept { return static_cast<bool>(hess_); }
    bool valid() const noexcept { return static_cast<bool>(f_); }
    const std::string& label() const noexcept { return label_; }

private:
    Fn f_;
    GradFn grad_;
    HessFn hess_;
    std::string label_;
};

/// Central-difference step used by every derivative fallback in the library.
inline double fd_step(double x) noexcept {
    const double ax = x < 0 ? -x : x;
    return 1e-6 * (ax > 1.0 ? ax : 1.0);
}

}  // namespace shearwave
