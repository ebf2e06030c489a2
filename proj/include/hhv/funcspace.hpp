#pragma once

// Function-space types shared by the verification routines: intervals,
// differentiable scalar functions, warping maps, and weight functions,
// together with the builtin families addressable from config files.

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hhv {

using ScalarFn = std::function<double(double)>;

// Closed interval [a, b] with finite endpoints and a < b.
struct Interval {
    double a;
    double b;

    Interval(double lo, double hi);

    double width() const { return b - a; }
    double midpoint() const { return 0.5 * (a + b); }
    bool contains(double x) const { return x >= a && x <= b; }
};

// Scalar function on an interval. The analytic derivative is optional;
// when absent, derivative() falls back to a finite-difference stencil
// (central in the interior, one-sided second order near the endpoints)
// with step 1e-6 * max(1, |x|), and consumers should treat derivative
// values as approximate.
class DifferentiableFunction {
  public:
    DifferentiableFunction(ScalarFn eval, std::optional<ScalarFn> deriv,
                           Interval domain, std::string label);

    double value(double x) const { return eval_(x); }
    double operator()(double x) const { return eval_(x); }

    // Analytic derivative if available, finite differences otherwise.
    double derivative(double x) const;

    bool has_analytic_derivative() const { return deriv_.has_value(); }
    const Interval& domain() const { return domain_; }
    const std::string& label() const { return label_; }

  private:
    ScalarFn eval_;
    std::optional<ScalarFn> deriv_;
    Interval domain_;
    std::string label_;
};

// Warping map phi on [a, b]. Builtins keep phi(x) inside [a, b]; the
// constructor caches phi(a) and phi(b). Orientation phi(a) < phi(b) is a
// precondition of the bound routines and is checked there, not here.
class PhiMap {
  public:
    PhiMap(ScalarFn eval, Interval domain, std::string label);

    double value(double x) const { return eval_(x); }
    double operator()(double x) const { return eval_(x); }

    const Interval& domain() const { return domain_; }
    const std::string& label() const { return label_; }
    double phi_a() const { return phi_a_; }
    double phi_b() const { return phi_b_; }
    double delta() const { return phi_b_ - phi_a_; }

  private:
    ScalarFn eval_;
    Interval domain_;
    std::string label_;
    double phi_a_;
    double phi_b_;
};

// Weight function h on the open unit interval (0, 1), h > 0.
// moment_integrable marks whether both weighted moments used by the bound
// routines (the |2t-1|-weighted one over (0,1) and the t-weighted one over
// (0,1/2)) are finite; the reciprocal builtin fails the first of these.
class HFunction {
  public:
    HFunction(ScalarFn eval, bool moment_integrable, std::string label);

    double value(double t) const { return eval_(t); }
    double operator()(double t) const { return eval_(t); }

    bool moment_integrable() const { return moment_integrable_; }
    const std::string& label() const { return label_; }

  private:
    ScalarFn eval_;
    bool moment_integrable_;
    std::string label_;
};

// Strong-convexity modulus c >= 0 and Holder pair (p, q) with q > 1 and
// 1/p + 1/q = 1. p is derived from q on construction.
struct StrongParams {
    double c;
    double q;
    double p;

    StrongParams(double c_, double q_);
};

enum class FunctionFamily { poly, exp_scale, abs_power };
enum class PhiFamily { identity, affine, power_warp };
enum class HFamily { h_linear, h_power, h_one, h_godunova };

// Builtin function families:
//   poly:      params are polynomial coefficients in ascending order
//   exp_scale: params = {k}, f(x) = exp(k*x)
//   abs_power: params = {r} with r >= 1, f(x) = |x|^r; optional further
//              entries are polynomial coefficients added on top, so
//              {1.5, 0, 0, 1} is |x|^{3/2} + x^2
DifferentiableFunction make_builtin_function(FunctionFamily family,
                                             const std::vector<double>& params,
                                             const Interval& domain);

// Builtin warp families:
//   identity:   params = {}
//   affine:     params = {slope, offset}
//   power_warp: params = {k} with k > 0, phi(x) = a + (b-a)*((x-a)/(b-a))^k
// Range containment phi([a,b]) within [a,b] is checked on a 1001-point grid;
// violation throws.
PhiMap make_builtin_phi(PhiFamily family, const std::vector<double>& params,
                        const Interval& domain);

// Builtin weight families: h_linear t, h_power t^s with s in (0,1),
// h_one 1, h_godunova 1/t. s is required exactly for h_power.
HFunction make_builtin_h(HFamily family, std::optional<double> s = std::nullopt);

// Name <-> family lookups used by the config loader. Unknown names throw.
FunctionFamily function_family_from_name(const std::string& name);
PhiFamily phi_family_from_name(const std::string& name);
HFamily h_family_from_name(const std::string& name);

// Central difference (f(x+step) - f(x-step)) / (2 step). Requires step > 0
// and x +- step inside the domain of f.
double numeric_derivative(const DifferentiableFunction& f, double x, double step);

}  // namespace hhv
