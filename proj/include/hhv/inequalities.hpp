#pragma once

// Midpoint/trapezoid gap computations, the two integral identities behind
// them, the four derivative-based defect bounds, and the printed corollary
// constants checked against their parent theorems.
//
// Throughout, phi_a = phi(a), phi_b = phi(b), dphi = phi_b - phi_a, and the
// mean of f is taken over [phi_a, phi_b].

#include <optional>
#include <stdexcept>

#include "hhv/convexity.hpp"
#include "hhv/funcspace.hpp"
#include "hhv/quadrature.hpp"

namespace hhv {

// A hypothesis needed by a bound does not hold for the given inputs
// (wrong orientation, divergent weight moment, nonpositive strong-term
// constant, ...). Callers record these as skips, not failures.
class PreconditionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct GapPair {
    double left_gap;   // mean(f) - f(midpoint)
    double right_gap;  // endpoint average - mean(f)
};

// Gaps of the two-sided mean inequality on [a, b]; both are >= 0 for
// convex f up to numerical slack.
GapPair hh_classical_gap(const DifferentiableFunction& f, const Interval& iv,
                         double quad_tol = 1e-10);

// Same gaps with the endpoints replaced by phi(a), phi(b). Requires
// phi(a) < phi(b).
GapPair hh_phi_gap(const DifferentiableFunction& f, const PhiMap& phi,
                   double quad_tol = 1e-10);

// Residual (left side minus right side) of the trapezoid-gap identity
//   (f(phi_a)+f(phi_b))/2 - mean(f)
//     = (dphi/2) * I[0,1] (2t-1) (f'(t phi_b + (1-t) phi_a) + c t(1-t) dphi^2) dt.
// Zero for any differentiable f and any c, up to quadrature error.
// Requires dphi != 0.
double lemma1_residual(const DifferentiableFunction& f, const PhiMap& phi, double c,
                       double quad_tol = 1e-10);

// Residual of the midpoint-gap identity
//   mean(f) - f((phi_a+phi_b)/2)
//     = dphi * ( I[0,1/2] t K(t) dt + I[1/2,1] (t-1) K(t) dt ),
//   K(t) = f'(t phi_a + (1-t) phi_b) + c t(1-t) dphi^2.
// The two c-contributions are +-5 c dphi^2 / 192 and cancel exactly.
// Requires dphi != 0.
double lemma2_residual(const DifferentiableFunction& f, const PhiMap& phi, double c,
                       double quad_tol = 1e-10);

// |endpoint average - mean| and |mean - value at the phi-midpoint|; the
// quantities the bounds below control. Require dphi > 0.
double trapezoid_defect(const DifferentiableFunction& f, const PhiMap& phi,
                        double quad_tol = 1e-10);
double midpoint_defect(const DifferentiableFunction& f, const PhiMap& phi,
                       double quad_tol = 1e-10);

// Strong-term constants reported alongside the Holder-based bounds.
struct BoundConstants {
    double delta_phi = 0.0;
    std::optional<double> A;                // trapezoid-side constant
    std::optional<double> G;                // midpoint-side constant, linear in c
    std::optional<double> G_proof_variant;  // same with c^q on the beta term
};

// Weighted moments the trapezoid/midpoint bounds integrate. Public because
// the corollary checks and tests probe them directly.
double thm1_h_moment(const HFunction& h, double quad_tol = 1e-10);  // I[0,1] |2t-1| h(t) dt
double thm3_h_moment(const HFunction& h, double quad_tol = 1e-10);  // I[0,1/2] t (h(t)+h(1-t)) dt

// Trapezoid defect bound for |f'| strongly h-convex along phi:
//   (dphi/2) (|f'(phi_b)| + |f'(phi_a)|) * I[0,1] |2t-1| h(t) dt.
// Requires dphi > 0 and an integrable h moment. The value does not depend
// on the certified modulus c.
double thm1_bound(const DifferentiableFunction& f, const PhiMap& phi, const HFunction& h,
                  double quad_tol = 1e-10);

struct Thm2Result {
    double bound;
    BoundConstants constants;
};

// Holder-refined trapezoid bound for |f'|^q strongly h-convex with
// modulus c:
//   (dphi / 2^{1/q}) (1/(p+1))^{1/p}
//     * [ (|f'(phi_b)|^q + |f'(phi_a)|^q) I[0,1] h + A ]^{1/q},
//   A = c^q dphi^{2q} B(q+1, q+1) - (c/6) dphi^2.
// Requires dphi > 0, q > 1, integrable h, and A > 0 whenever c > 0.
Thm2Result thm2_bound(const DifferentiableFunction& f, const PhiMap& phi, const HFunction& h,
                      const StrongParams& params, double quad_tol = 1e-10);

// Midpoint defect bound for |f'| strongly h-convex along phi:
//   dphi (|f'(phi_a)| + |f'(phi_b)|) * I[0,1/2] t (h(t) + h(1-t)) dt.
// Requires dphi > 0 and that this particular moment converges (the
// t-weight tames the reciprocal builtin, so it is admitted here even
// though its |2t-1| moment diverges).
double thm3_bound(const DifferentiableFunction& f, const PhiMap& phi, const HFunction& h,
                  double quad_tol = 1e-10);

struct Thm4Result {
    double bound_printed;  // prefactor dphi / 2^{1/q}, as stated
    double bound_proof;    // prefactor dphi / 2, as derived
    BoundConstants constants;
};

// Holder-refined midpoint bound for |f'|^q strongly h-convex with
// modulus c. With
//   G = c dphi^{2q} B_{1/2}(q+1, q+1) - (c/12) dphi^2,
//   H0 = I[0,1/2] (h(t) |f'(phi_a)|^q + h(1-t) |f'(phi_b)|^q) dt + G,
//   H1 = the same integral over [1/2, 1] + G,
// the bound is prefactor * (1/(p+1))^{1/p} * (H0^{1/q} + H1^{1/q}).
// The stated prefactor and the one the derivation actually yields differ
// (2^{1/q} vs 2); both values are returned, and bound_printed >= bound_proof
// for q > 1. G_proof_variant (c^q on the beta term) is reported in the
// constants without being used. Requires dphi > 0, q > 1, and G > 0
// whenever c > 0.
Thm4Result thm4_bound(const DifferentiableFunction& f, const PhiMap& phi, const HFunction& h,
                      const StrongParams& params, double quad_tol = 1e-10);

// Printed corollary constants. The first letter groups them by parent
// bound: c1-c3 specialize thm1, k1-k3 thm2, c4-c6 thm3, r10-r30 thm4;
// within each group the weight is h_linear, then h_power(s), then h_one.
enum class CorollaryId { c1, c2, c3, k1, k2, k3, c4, c5, c6, r10, r20, r30 };

struct CorollaryParams {
    double s = 0.5;                      // h_power exponent where applicable
    std::optional<StrongParams> strong;  // required for k1-k3, r10-r30
};

struct CorollaryResult {
    double printed_value;  // the closed-form constant as printed
    double theorem_value;  // parent bound evaluated with the matching weight
    double discrepancy;    // printed_value - theorem_value
};

const char* corollary_name(CorollaryId id);
CorollaryId corollary_from_name(const std::string& name);

// Evaluates one printed corollary constant and its parent-theorem value.
// A nonzero discrepancy means the printed constant does not match direct
// integration; the theorem path is authoritative.
CorollaryResult corollary_bound(CorollaryId id, const DifferentiableFunction& f,
                                const PhiMap& phi, const CorollaryParams& params,
                                double quad_tol = 1e-10);

}  // namespace hhv
