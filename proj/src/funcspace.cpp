#include "hhv/funcspace.hpp"

#include <cmath>
#include <stdexcept>

namespace hhv {

namespace {

double poly_eval(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& coeffs) {
    std::vector<double> d;
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        d.push_back(coeffs[i] * static_cast<double>(i));
    return d;
}

void require_finite_params(const std::vector<double>& params, const char* what) {
    for (double p : params)
        if (!std::isfinite(p))
            throw std::invalid_argument(std::string(what) + ": non-finite parameter");
}

}  // namespace

Interval::Interval(double lo, double hi) : a(lo), b(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("Interval: endpoints must be finite");
    if (!(lo < hi))
        throw std::invalid_argument("Interval: require a < b");
}

DifferentiableFunction::DifferentiableFunction(ScalarFn eval, std::optional<ScalarFn> deriv,
                                               Interval domain, std::string label)
    : eval_(std::move(eval)), deriv_(std::move(deriv)), domain_(domain), label_(std::move(label)) {
    if (!eval_)
        throw std::invalid_argument("DifferentiableFunction: empty eval");
    if (label_.empty())
        throw std::invalid_argument("DifferentiableFunction: empty label");
}

double DifferentiableFunction::derivative(double x) const {
    if (deriv_)
        return (*deriv_)(x);
    const double step = 1e-6 * std::max(1.0, std::abs(x));
    if (x - step >= domain_.a && x + step <= domain_.b)
        return (eval_(x + step) - eval_(x - step)) / (2.0 * step);
    // One-sided second-order stencil at or near an endpoint.
    if (x + 2.0 * step <= domain_.b)
        return (-3.0 * eval_(x) + 4.0 * eval_(x + step) - eval_(x + 2.0 * step)) / (2.0 * step);
    if (x - 2.0 * step >= domain_.a)
        return (3.0 * eval_(x) - 4.0 * eval_(x - step) + eval_(x - 2.0 * step)) / (2.0 * step);
    throw std::invalid_argument("derivative: interval too narrow for the stencil");
}

PhiMap::PhiMap(ScalarFn eval, Interval domain, std::string label)
    : eval_(std::move(eval)), domain_(domain), label_(std::move(label)) {
    if (!eval_)
        throw std::invalid_argument("PhiMap: empty eval");
    if (label_.empty())
        throw std::invalid_argument("PhiMap: empty label");
    phi_a_ = eval_(domain_.a);
    phi_b_ = eval_(domain_.b);
}

HFunction::HFunction(ScalarFn eval, bool moment_integrable, std::string label)
    : eval_(std::move(eval)), moment_integrable_(moment_integrable), label_(std::move(label)) {
    if (!eval_)
        throw std::invalid_argument("HFunction: empty eval");
    if (label_.empty())
        throw std::invalid_argument("HFunction: empty label");
}

StrongParams::StrongParams(double c_, double q_) : c(c_), q(q_) {
    if (!std::isfinite(c_) || c_ < 0.0)
        throw std::invalid_argument("StrongParams: require c >= 0");
    if (!std::isfinite(q_) || !(q_ > 1.0))
        throw std::invalid_argument("StrongParams: require q > 1");
    p = q_ / (q_ - 1.0);
}

DifferentiableFunction make_builtin_function(FunctionFamily family,
                                             const std::vector<double>& params,
                                             const Interval& domain) {
    require_finite_params(params, "make_builtin_function");
    switch (family) {
        case FunctionFamily::poly: {
            if (params.empty())
                throw std::invalid_argument("poly: at least one coefficient required");
            auto dcoeffs = poly_derivative(params);
            return DifferentiableFunction(
                [params](double x) { return poly_eval(params, x); },
                [dcoeffs](double x) { return poly_eval(dcoeffs, x); },
                domain, "poly");
        }
        case FunctionFamily::exp_scale: {
            if (params.size() != 1)
                throw std::invalid_argument("exp_scale: params must be {k}");
            const double k = params[0];
            return DifferentiableFunction(
                [k](double x) { return std::exp(k * x); },
                [k](double x) { return k * std::exp(k * x); },
                domain, "exp_scale");
        }
        case FunctionFamily::abs_power: {
            if (params.empty())
                throw std::invalid_argument("abs_power: params must be {r, coeffs...}");
            const double r = params[0];
            if (!(r >= 1.0))
                throw std::invalid_argument("abs_power: require r >= 1 (derivative unbounded at 0 otherwise)");
            const std::vector<double> tail(params.begin() + 1, params.end());
            const auto dtail = poly_derivative(tail);
            auto eval = [r, tail](double x) {
                return std::pow(std::abs(x), r) + poly_eval(tail, x);
            };
            auto deriv = [r, dtail](double x) {
                double core = 0.0;
                if (x != 0.0)
                    core = r * std::pow(std::abs(x), r - 1.0) * (x > 0.0 ? 1.0 : -1.0);
                return core + poly_eval(dtail, x);
            };
            return DifferentiableFunction(eval, deriv, domain, "abs_power");
        }
    }
    throw std::invalid_argument("make_builtin_function: unknown family");
}

namespace {

void check_phi_containment(const ScalarFn& phi, const Interval& domain, const char* label) {
    const double slop = 1e-12 * std::max({1.0, std::abs(domain.a), std::abs(domain.b)});
    for (int i = 0; i <= 1000; ++i) {
        const double x = domain.a + domain.width() * (static_cast<double>(i) / 1000.0);
        const double v = phi(x);
        if (!std::isfinite(v) || v < domain.a - slop || v > domain.b + slop)
            throw std::invalid_argument(std::string(label) + ": range leaves the domain interval");
    }
}

}  // namespace

PhiMap make_builtin_phi(PhiFamily family, const std::vector<double>& params,
                        const Interval& domain) {
    require_finite_params(params, "make_builtin_phi");
    switch (family) {
        case PhiFamily::identity: {
            if (!params.empty())
                throw std::invalid_argument("identity: no params expected");
            return PhiMap([](double x) { return x; }, domain, "identity");
        }
        case PhiFamily::affine: {
            if (params.size() != 2)
                throw std::invalid_argument("affine: params must be {slope, offset}");
            const double slope = params[0], offset = params[1];
            ScalarFn eval = [slope, offset](double x) { return slope * x + offset; };
            check_phi_containment(eval, domain, "affine");
            return PhiMap(eval, domain, "affine");
        }
        case PhiFamily::power_warp: {
            if (params.size() != 1)
                throw std::invalid_argument("power_warp: params must be {k}");
            const double k = params[0];
            if (!(k > 0.0))
                throw std::invalid_argument("power_warp: require k > 0");
            const double a = domain.a, w = domain.width();
            ScalarFn eval = [a, w, k](double x) { return a + w * std::pow((x - a) / w, k); };
            check_phi_containment(eval, domain, "power_warp");
            return PhiMap(eval, domain, "power_warp");
        }
    }
    throw std::invalid_argument("make_builtin_phi: unknown family");
}

HFunction make_builtin_h(HFamily family, std::optional<double> s) {
    switch (family) {
        case HFamily::h_linear:
            if (s)
                throw std::invalid_argument("h_linear: no parameter expected");
            return HFunction([](double t) { return t; }, true, "h_linear");
        case HFamily::h_power: {
            if (!s)
                throw std::invalid_argument("h_power: parameter s required");
            const double sv = *s;
            if (!std::isfinite(sv) || !(sv > 0.0) || !(sv < 1.0))
                throw std::invalid_argument("h_power: require s in (0, 1)");
            return HFunction([sv](double t) { return std::pow(t, sv); }, true, "h_power");
        }
        case HFamily::h_one:
            if (s)
                throw std::invalid_argument("h_one: no parameter expected");
            return HFunction([](double) { return 1.0; }, true, "h_one");
        case HFamily::h_godunova:
            if (s)
                throw std::invalid_argument("h_godunova: no parameter expected");
            return HFunction([](double t) { return 1.0 / t; }, false, "h_godunova");
    }
    throw std::invalid_argument("make_builtin_h: unknown family");
}

FunctionFamily function_family_from_name(const std::string& name) {
    if (name == "poly") return FunctionFamily::poly;
    if (name == "exp_scale") return FunctionFamily::exp_scale;
    if (name == "abs_power") return FunctionFamily::abs_power;
    throw std::invalid_argument("unknown function family: " + name);
}

PhiFamily phi_family_from_name(const std::string& name) {
    if (name == "identity") return PhiFamily::identity;
    if (name == "affine") return PhiFamily::affine;
    if (name == "power_warp") return PhiFamily::power_warp;
    throw std::invalid_argument("unknown phi family: " + name);
}

HFamily h_family_from_name(const std::string& name) {
    if (name == "h_linear") return HFamily::h_linear;
    if (name == "h_power") return HFamily::h_power;
    if (name == "h_one") return HFamily::h_one;
    if (name == "h_godunova") return HFamily::h_godunova;
    throw std::invalid_argument("unknown h family: " + name);
}

double numeric_derivative(const DifferentiableFunction& f, double x, double step) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw std::invalid_argument("numeric_derivative: require step > 0");
    const Interval& d = f.domain();
    if (x - step < d.a || x + step > d.b)
        throw std::invalid_argument("numeric_derivative: x +- step must stay inside the domain");
    return (f.value(x + step) - f.value(x - step)) / (2.0 * step);
}

}  // namespace hhv
