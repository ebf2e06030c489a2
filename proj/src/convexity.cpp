#include "hhv/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace hhv {

namespace {

constexpr int kGridXY = 21;  // points per spatial axis, endpoints included
constexpr int kGridT = 19;   // interior t points k/20, k = 1..19

// Uniform double in [0, 1) built from the raw engine output so the stream
// is identical across standard library implementations.
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double open_unit_uniform(std::mt19937_64& rng) {
    double t = unit_uniform(rng);
    while (t <= 0.0 || t >= 1.0)
        t = unit_uniform(rng);
    return t;
}

// Visits the deterministic grid first, then the seeded random triples.
template <class Visitor>
void for_each_triple(const Interval& dom, int samples, std::uint64_t seed, Visitor&& visit) {
    const double a = dom.a, w = dom.width();
    for (int i = 0; i < kGridXY; ++i) {
        const double x = a + w * (static_cast<double>(i) / (kGridXY - 1));
        for (int j = 0; j < kGridXY; ++j) {
            const double y = a + w * (static_cast<double>(j) / (kGridXY - 1));
            for (int k = 1; k <= kGridT; ++k) {
                const double t = static_cast<double>(k) / (kGridT + 1);
                visit(x, y, t);
            }
        }
    }
    std::mt19937_64 rng(seed);
    for (int n = 0; n < samples; ++n) {
        const double x = a + w * unit_uniform(rng);
        const double y = a + w * unit_uniform(rng);
        const double t = open_unit_uniform(rng);
        visit(x, y, t);
    }
}

// Defect pieces computed with a fixed evaluation order: the chord and the
// mix argument round identically, so a linear g under h_linear yields an
// exactly zero base term.
struct DefectParts {
    double base;      // g(mix) - h(t) g(u) - h(1-t) g(v)
    double strength;  // t (1-t) (u - v)^2
    double gu, gv, gmix;
};

DefectParts defect_parts(const DifferentiableFunction& g, const PhiMap& phi,
                         const HFunction& h, double x, double y, double t) {
    const double u = phi.value(x);
    const double v = phi.value(y);
    const double omt = 1.0 - t;
    const double m1 = t * u;
    const double m2 = omt * v;
    const double mix = m1 + m2;
    const double gu = g.value(u);
    const double gv = g.value(v);
    const double gmix = g.value(mix);
    const double c1 = h.value(t) * gu;
    const double c2 = h.value(omt) * gv;
    const double chord = c1 + c2;
    const double diff = u - v;
    return {gmix - chord, t * omt * diff * diff, gu, gv, gmix};
}

}  // namespace

double convexity_defect(const DifferentiableFunction& g, const PhiMap& phi,
                        const HFunction& h, double c, double x, double y, double t) {
    if (!(t > 0.0) || !(t < 1.0))
        throw std::invalid_argument("convexity_defect: require t in (0, 1)");
    const DefectParts dp = defect_parts(g, phi, h, x, y, t);
    return dp.base + c * dp.strength;
}

ConvexityCertificate certify(const DifferentiableFunction& g, const PhiMap& phi,
                             const HFunction& h, double c, int samples,
                             std::uint64_t seed) {
    if (samples < 0)
        throw std::invalid_argument("certify: require samples >= 0");
    if (!(c >= 0.0) || !std::isfinite(c))
        throw std::invalid_argument("certify: require c >= 0");

    double max_violation = -std::numeric_limits<double>::infinity();
    std::array<double, 3> worst{0.0, 0.0, 0.5};
    double scale = 0.0;
    double min_range_value = std::numeric_limits<double>::infinity();
    long used = 0;

    for_each_triple(phi.domain(), samples, seed, [&](double x, double y, double t) {
        const DefectParts dp = defect_parts(g, phi, h, x, y, t);
        const double d = dp.base + c * dp.strength;
        if (!std::isfinite(d))
            throw std::runtime_error("certify: non-finite defect sample");
        if (d > max_violation) {
            max_violation = d;
            worst = {x, y, t};
        }
        scale = std::max({scale, std::abs(dp.gu), std::abs(dp.gv), std::abs(dp.gmix)});
        min_range_value = std::min({min_range_value, dp.gu, dp.gv, dp.gmix});
        ++used;
    });

    const double slack = 1e-9 * scale;
    return {max_violation <= slack, max_violation, worst,
            used,  seed,          slack,
            scale, min_range_value >= -slack};
}

double max_modulus(const DifferentiableFunction& g, const PhiMap& phi,
                   const HFunction& h, int samples, std::uint64_t seed) {
    if (samples < 0)
        throw std::invalid_argument("max_modulus: require samples >= 0");

    // First pass: width of the sampled phi range, which sets the cutoff
    // below which a denominator is dominated by rounding noise.
    double phi_min = std::numeric_limits<double>::infinity();
    double phi_max = -std::numeric_limits<double>::infinity();
    for_each_triple(phi.domain(), samples, seed, [&](double x, double y, double) {
        const double u = phi.value(x);
        const double v = phi.value(y);
        phi_min = std::min({phi_min, u, v});
        phi_max = std::max({phi_max, u, v});
    });
    const double span = phi_max - phi_min;
    const double cutoff = 1e-8 * std::max(1.0, span * span);

    double min_ratio = std::numeric_limits<double>::infinity();
    long included = 0;
    for_each_triple(phi.domain(), samples, seed, [&](double x, double y, double t) {
        const DefectParts dp = defect_parts(g, phi, h, x, y, t);
        if (dp.strength < cutoff)
            return;
        const double ratio = -dp.base / dp.strength;
        if (!std::isfinite(ratio))
            throw std::runtime_error("max_modulus: non-finite ratio sample");
        if (ratio < min_ratio)
            min_ratio = ratio;
        ++included;
    });
    if (included == 0)
        throw std::runtime_error("max_modulus: all sampled pairs are degenerate (phi(x) = phi(y))");
    return std::max(0.0, min_ratio);
}

}  // namespace hhv
