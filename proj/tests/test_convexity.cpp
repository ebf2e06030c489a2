#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

#include "hhv/convexity.hpp"

using namespace hhv;

namespace {

const Interval kUnit(0.0, 1.0);

DifferentiableFunction square() {
    return make_builtin_function(FunctionFamily::poly, {0.0, 0.0, 1.0}, kUnit);
}

DifferentiableFunction line(double a, double b) {
    return make_builtin_function(FunctionFamily::poly, {b, a}, kUnit);
}

PhiMap id_phi() { return make_builtin_phi(PhiFamily::identity, {}, kUnit); }

}  // namespace

TEST_CASE("defect is affine in the modulus with slope t(1-t)(phi x - phi y)^2") {
    auto f = square();
    auto phi = make_builtin_phi(PhiFamily::affine, {0.5, 0.25}, kUnit);
    auto h = make_builtin_h(HFamily::h_power, 0.5);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double x = u01(rng), y = u01(rng);
        const double t = 0.01 + 0.98 * u01(rng);
        const double base = convexity_defect(f, phi, h, 0.0, x, y, t);
        for (double c : {0.5, 2.0, 13.0}) {
            const double dphi = phi.value(x) - phi.value(y);
            const double expected = base + c * t * (1.0 - t) * dphi * dphi;
            const double actual = convexity_defect(f, phi, h, c, x, y, t);
            CHECK(std::abs(actual - expected) <= 1e-12 * (1.0 + std::abs(expected)));
        }
    }
}

TEST_CASE("defect is symmetric under (x,y,t) -> (y,x,1-t)") {
    auto f = square();
    auto phi = make_builtin_phi(PhiFamily::power_warp, {2.0}, kUnit);
    auto h = make_builtin_h(HFamily::h_power, 0.3);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double x = u01(rng), y = u01(rng);
        const double t = 0.01 + 0.98 * u01(rng);
        const double a = convexity_defect(f, phi, h, 1.0, x, y, t);
        const double b = convexity_defect(f, phi, h, 1.0, y, x, 1.0 - t);
        CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("square certifies as strongly convex exactly up to modulus 1") {
    auto f = square();
    auto phi = id_phi();
    auto h = make_builtin_h(HFamily::h_linear);

    auto at0 = certify(f, phi, h, 0.0, 2048, 1);
    CHECK(at0.holds);
    CHECK(at0.range_nonnegative);
    CHECK(at0.samples_used > 2048);

    // x^2 - 1 * x^2 is still convex: the defect vanishes identically.
    auto at1 = certify(f, phi, h, 1.0, 2048, 1);
    CHECK(at1.holds);
    CHECK(at1.max_violation <= at1.slack);

    // Any larger modulus is refuted on the sample grid.
    auto beyond = certify(f, phi, h, 1.01, 2048, 1);
    CHECK(!beyond.holds);
    CHECK(beyond.max_violation > beyond.slack);
}

TEST_CASE("certificate is deterministic for a fixed seed") {
    auto f = make_builtin_function(FunctionFamily::exp_scale, {1.0}, kUnit);
    auto phi = make_builtin_phi(PhiFamily::affine, {0.5, 0.25}, kUnit);
    auto h = make_builtin_h(HFamily::h_linear);
    auto a = certify(f, phi, h, 0.1, 512, 77);
    auto b = certify(f, phi, h, 0.1, 512, 77);
    CHECK(a.max_violation == b.max_violation);
    CHECK(a.worst_point[0] == b.worst_point[0]);
    CHECK(a.worst_point[1] == b.worst_point[1]);
    CHECK(a.worst_point[2] == b.worst_point[2]);
    CHECK(a.seed == 77);

    auto c = certify(f, phi, h, 0.1, 512, 78);
    CHECK(c.samples_used == a.samples_used);
}

TEST_CASE("violation grows monotonically with the claimed modulus") {
    auto f = make_builtin_function(FunctionFamily::exp_scale, {1.0}, kUnit);
    auto phi = id_phi();
    auto h = make_builtin_h(HFamily::h_linear);
    double prev = -1e300;
    for (double c : {0.0, 0.2, 0.4, 0.6, 1.0, 2.0}) {
        auto cert = certify(f, phi, h, c, 1024, 5);
        CHECK(cert.max_violation >= prev - 1e-12);
        prev = cert.max_violation;
    }
}

TEST_CASE("weight dominance: larger h admits more functions") {
    // |x|^{3/2} + x^2 has a concave derivative piece, so its absolute
    // derivative is not convex, yet it passes with the constant weight.
    auto g = make_builtin_function(FunctionFamily::abs_power, {1.5, 0.0, 0.0, 1.0}, kUnit);
    DifferentiableFunction absd(
        [g](double x) { return std::abs(g.derivative(x)); }, std::nullopt, kUnit, "|g'|");
    auto phi = id_phi();

    auto lin = certify(absd, phi, make_builtin_h(HFamily::h_linear), 0.0, 2048, 3);
    CHECK(!lin.holds);

    auto half = certify(absd, phi, make_builtin_h(HFamily::h_power, 0.5), 0.0, 2048, 3);
    CHECK(half.holds);

    auto one = certify(absd, phi, make_builtin_h(HFamily::h_one), 0.0, 2048, 3);
    CHECK(one.holds);
}

TEST_CASE("range_nonnegative flags sign changes") {
    auto pos = certify(square(), id_phi(), make_builtin_h(HFamily::h_one), 0.0, 256, 9);
    CHECK(pos.range_nonnegative);
    auto mixed = certify(line(1.0, -0.5), id_phi(), make_builtin_h(HFamily::h_one), 0.0, 256, 9);
    CHECK(!mixed.range_nonnegative);
}

TEST_CASE("max_modulus recovers the strong convexity constant of the square") {
    const double m = max_modulus(square(), id_phi(), make_builtin_h(HFamily::h_linear), 4096, 42);
    CHECK(std::abs(m - 1.0) <= 1e-6);
}

TEST_CASE("max_modulus of a linear function is exactly zero") {
    for (auto [a, b] : {std::pair{1.0, 0.0}, {2.0, -0.3}, {-0.7, 0.4}}) {
        const double m =
            max_modulus(line(a, b), id_phi(), make_builtin_h(HFamily::h_linear), 4096, 42);
        CHECK(std::abs(m) <= 1e-9);
    }
}

TEST_CASE("max_modulus approaches half the smallest second derivative") {
    const double m = max_modulus(make_builtin_function(FunctionFamily::exp_scale, {1.0}, kUnit),
                                 id_phi(), make_builtin_h(HFamily::h_linear), 4096, 42);
    CHECK(m >= 0.5 - 1e-9);
    CHECK(m <= 0.53);
}

TEST_CASE("max_modulus requires at least one non-degenerate pair") {
    auto flat = make_builtin_phi(PhiFamily::affine, {0.0, 0.5}, kUnit);
    CHECK_THROWS_AS(max_modulus(square(), flat, make_builtin_h(HFamily::h_linear), 64, 1),
                    std::runtime_error);
}

TEST_CASE("certified modulus from max_modulus passes certification") {
    auto f = make_builtin_function(FunctionFamily::poly, {0.0, -1.0, 2.0}, kUnit);
    auto phi = id_phi();
    auto h = make_builtin_h(HFamily::h_linear);
    const double m = max_modulus(f, phi, h, 2048, 13);
    auto cert = certify(f, phi, h, m, 2048, 13);
    CHECK(cert.holds);
}
