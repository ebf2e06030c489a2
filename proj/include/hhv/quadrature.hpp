#pragma once

// Adaptive Gauss-Kronrod quadrature plus the beta-function helpers used by
// the bound formulas. Tolerances are absolute.

#include <cstddef>
#include <stdexcept>

#include "hhv/funcspace.hpp"

namespace hhv {

struct QuadResult {
    double value;
    double err_estimate;
    int subdivisions;
};

// Thrown when the node budget is exhausted before the tolerance is met, or
// when the integrand produces a non-finite value.
class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Integrates g over [lo, hi] with a 7-15 Gauss-Kronrod rule and adaptive
// bisection. All nodes are strictly interior, so the endpoints are never
// evaluated. On success err_estimate <= tol; on failure it throws.
QuadResult integrate(const ScalarFn& g, double lo, double hi, double tol,
                     std::size_t max_evals = 1'000'000);

// Variant for t-integrals over a subrange of the unit interval whose
// integrand may blow up at 0 or 1 (weight functions): ends touching 0 or 1
// are clipped by eps = 1e-12 and the clipped mass estimate is folded into
// err_estimate. Requires 0 <= lo < hi <= 1.
QuadResult integrate_unit_open(const ScalarFn& g, double lo, double hi, double tol,
                               std::size_t max_evals = 1'000'000);

// log Gamma(x) for x > 0.
double log_gamma(double x);

// Euler beta B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y), computed through
// log_gamma so that moderate arguments stay in range. Requires x, y > 0.
double beta(double x, double y);

// Half-range incomplete beta B_{1/2}(q+1, q+1) = integral of t^q (1-t)^q
// over [0, 1/2]; by symmetry of the integrand this equals B(q+1, q+1)/2.
// Requires q > 0.
double incomplete_beta_half(double q);

// Direct quadrature of the same integral, kept as an independent
// cross-check of the closed form above. Do not fold the two paths together.
QuadResult incomplete_beta_half_quad(double q, double tol);

}  // namespace hhv
