#pragma once

// Sampling-based certification of strong h-convexity along a warp map.
// A certificate is evidence gathered on a finite sample set, not a proof:
// it can only ever refute the property or fail to refute it.

#include <array>
#include <cstdint>

#include "hhv/funcspace.hpp"

namespace hhv {

struct ConvexityCertificate {
    bool holds;
    double max_violation;
    std::array<double, 3> worst_point;  // (x, y, t) attaining max_violation
    long samples_used;
    std::uint64_t seed;
    double slack;              // acceptance threshold: 1e-9 * scale
    double scale;              // max sampled |g(phi(.))|
    bool range_nonnegative;    // min sampled g(phi(.)) >= -slack (reported only)
};

// Violation of the strong h-convexity inequality at one triple:
//   d = g(t phi(x) + (1-t) phi(y))
//       - h(t) g(phi(x)) - h(1-t) g(phi(y))
//       + c t (1-t) (phi(x) - phi(y))^2
// The property holds at the triple iff d <= 0. d is affine in c with slope
// t (1-t) (phi(x) - phi(y))^2.
double convexity_defect(const DifferentiableFunction& g, const PhiMap& phi,
                        const HFunction& h, double c, double x, double y, double t);

// Evaluates the defect over a deterministic 21 x 21 x 19 grid of
// (x, y, t) triples plus `samples` seeded random triples with t drawn from
// the open unit interval. holds <=> max defect <= 1e-9 * scale.
ConvexityCertificate certify(const DifferentiableFunction& g, const PhiMap& phi,
                             const HFunction& h, double c, int samples,
                             std::uint64_t seed);

// Largest modulus c for which the sampled defects stay nonpositive:
// the minimum over sampled triples of
//   [h(t) g(phi(x)) + h(1-t) g(phi(y)) - g(mix)] / [t (1-t) (phi(x)-phi(y))^2],
// clamped below at 0. Triples whose denominator is too small to divide
// reliably are excluded; if every sampled pair is degenerate
// (phi(x) = phi(y) throughout) this throws.
double max_modulus(const DifferentiableFunction& g, const PhiMap& phi,
                   const HFunction& h, int samples, std::uint64_t seed);

}  // namespace hhv
