#include "hhv/inequalities.hpp"

#include <cmath>

namespace hhv {

namespace {

// Signed integral of f from x0 to x1 (either orientation).
double signed_integral(const DifferentiableFunction& f, double x0, double x1, double tol) {
    auto g = [&f](double x) { return f.value(x); };
    if (x0 < x1)
        return integrate(g, x0, x1, tol).value;
    return -integrate(g, x1, x0, tol).value;
}

double mean_over(const DifferentiableFunction& f, double x0, double x1, double tol) {
    return signed_integral(f, x0, x1, tol) / (x1 - x0);
}

void require_oriented(const PhiMap& phi) {
    if (!(phi.phi_a() < phi.phi_b()))
        throw PreconditionError("require phi(a) < phi(b)");
}

double abs_deriv(const DifferentiableFunction& f, double x) {
    return std::abs(f.derivative(x));
}

}  // namespace

GapPair hh_classical_gap(const DifferentiableFunction& f, const Interval& iv, double quad_tol) {
    const double mean = mean_over(f, iv.a, iv.b, quad_tol);
    return {mean - f.value(iv.midpoint()),
            0.5 * (f.value(iv.a) + f.value(iv.b)) - mean};
}

GapPair hh_phi_gap(const DifferentiableFunction& f, const PhiMap& phi, double quad_tol) {
    require_oriented(phi);
    const double pa = phi.phi_a(), pb = phi.phi_b();
    const double mean = mean_over(f, pa, pb, quad_tol);
    return {mean - f.value(0.5 * (pa + pb)),
            0.5 * (f.value(pa) + f.value(pb)) - mean};
}

double lemma1_residual(const DifferentiableFunction& f, const PhiMap& phi, double c,
                       double quad_tol) {
    const double pa = phi.phi_a(), pb = phi.phi_b();
    const double dphi = pb - pa;
    if (dphi == 0.0)
        throw PreconditionError("lemma1_residual: phi(a) == phi(b)");
    const double lhs = 0.5 * (f.value(pa) + f.value(pb)) - mean_over(f, pa, pb, quad_tol);
    const double d2 = dphi * dphi;
    const double rhs = 0.5 * dphi *
                       integrate(
                           [&](double t) {
                               const double mix = pa + t * dphi;
                               return (2.0 * t - 1.0) *
                                      (f.derivative(mix) + c * t * (1.0 - t) * d2);
                           },
                           0.0, 1.0, quad_tol)
                           .value;
    return lhs - rhs;
}

double lemma2_residual(const DifferentiableFunction& f, const PhiMap& phi, double c,
                       double quad_tol) {
    const double pa = phi.phi_a(), pb = phi.phi_b();
    const double dphi = pb - pa;
    if (dphi == 0.0)
        throw PreconditionError("lemma2_residual: phi(a) == phi(b)");
    const double lhs = mean_over(f, pa, pb, quad_tol) - f.value(0.5 * (pa + pb));
    const double d2 = dphi * dphi;
    auto kernel = [&](double t) {
        const double mix = t * pa + (1.0 - t) * pb;
        return f.derivative(mix) + c * t * (1.0 - t) * d2;
    };
    const double lower =
        integrate([&](double t) { return t * kernel(t); }, 0.0, 0.5, quad_tol).value;
    const double upper =
        integrate([&](double t) { return (t - 1.0) * kernel(t); }, 0.5, 1.0, quad_tol).value;
    return lhs - dphi * (lower + upper);
}

double trapezoid_defect(const DifferentiableFunction& f, const PhiMap& phi, double quad_tol) {
    require_oriented(phi);
    const double pa = phi.phi_a(), pb = phi.phi_b();
    return std::abs(0.5 * (f.value(pa) + f.value(pb)) - mean_over(f, pa, pb, quad_tol));
}

double midpoint_defect(const DifferentiableFunction& f, const PhiMap& phi, double quad_tol) {
    require_oriented(phi);
    const double pa = phi.phi_a(), pb = phi.phi_b();
    return std::abs(mean_over(f, pa, pb, quad_tol) - f.value(0.5 * (pa + pb)));
}

double thm1_h_moment(const HFunction& h, double quad_tol) {
    if (!h.moment_integrable())
        throw PreconditionError("thm1_h_moment: weight moment diverges for " + h.label());
    return integrate_unit_open(
               [&h](double t) { return std::abs(2.0 * t - 1.0) * h.value(t); }, 0.0, 1.0,
               quad_tol)
        .value;
}

double thm3_h_moment(const HFunction& h, double quad_tol) {
    return integrate_unit_open(
               [&h](double t) { return t * (h.value(t) + h.value(1.0 - t)); }, 0.0, 0.5,
               quad_tol)
        .value;
}

double thm1_bound(const DifferentiableFunction& f, const PhiMap& phi, const HFunction& h,
                  double quad_tol) {
    require_oriented(phi);
    if (!h.moment_integrable())
        throw PreconditionError("thm1_bound: weight moment diverges for " + h.label());
    const double moment = thm1_h_moment(h, quad_tol);
    return 0.5 * phi.delta() * (abs_deriv(f, phi.phi_b()) + abs_deriv(f, phi.phi_a())) * moment;
}

Thm2Result thm2_bound(const DifferentiableFunction& f, const PhiMap& phi, const HFunction& h,
                      const StrongParams& params, double quad_tol) {
    require_oriented(phi);
    if (!h.moment_integrable())
        throw PreconditionError("thm2_bound: weight moment diverges for " + h.label());
    const double dphi = phi.delta();
    const double c = params.c, q = params.q, p = params.p;
    const double A = std::pow(c, q) * std::pow(dphi, 2.0 * q) * beta(q + 1.0, q + 1.0) -
                     (c / 6.0) * dphi * dphi;
    if (c > 0.0 && !(A > 0.0))
        throw PreconditionError("thm2_bound: strong-term constant A <= 0 with c > 0");
    const double ih = integrate_unit_open([&h](double t) { return h.value(t); }, 0.0, 1.0,
                                          quad_tol)
                          .value;
    const double bracket = (std::pow(abs_deriv(f, phi.phi_b()), q) +
                            std::pow(abs_deriv(f, phi.phi_a()), q)) *
                               ih +
                           A;
    const double bound = dphi / std::pow(2.0, 1.0 / q) * std::pow(1.0 / (p + 1.0), 1.0 / p) *
                         std::pow(bracket, 1.0 / q);
    BoundConstants constants;
    constants.delta_phi = dphi;
    constants.A = A;
    return {bound, constants};
}

double thm3_bound(const DifferentiableFunction& f, const PhiMap& phi, const HFunction& h,
                  double quad_tol) {
    require_oriented(phi);
    double moment = 0.0;
    try {
        moment = thm3_h_moment(h, quad_tol);
    } catch (const QuadratureError& e) {
        throw PreconditionError(std::string("thm3_bound: weight moment diverges: ") + e.what());
    }
    return phi.delta() * (abs_deriv(f, phi.phi_a()) + abs_deriv(f, phi.phi_b())) * moment;
}

Thm4Result thm4_bound(const DifferentiableFunction& f, const PhiMap& phi, const HFunction& h,
                      const StrongParams& params, double quad_tol) {
    require_oriented(phi);
    const double dphi = phi.delta();
    const double c = params.c, q = params.q, p = params.p;
    const double bhalf = incomplete_beta_half(q);
    const double strong_drop = (c / 12.0) * dphi * dphi;
    const double G = c * std::pow(dphi, 2.0 * q) * bhalf - strong_drop;
    const double G_proof = std::pow(c, q) * std::pow(dphi, 2.0 * q) * bhalf - strong_drop;
    if (c > 0.0 && !(G > 0.0))
        throw PreconditionError("thm4_bound: strong-term constant G <= 0 with c > 0");

    const double da_q = std::pow(abs_deriv(f, phi.phi_a()), q);
    const double db_q = std::pow(abs_deriv(f, phi.phi_b()), q);
    auto weighted = [&](double t) { return h.value(t) * da_q + h.value(1.0 - t) * db_q; };
    double h0 = 0.0, h1 = 0.0;
    try {
        h0 = integrate_unit_open(weighted, 0.0, 0.5, quad_tol).value + G;
        h1 = integrate_unit_open(weighted, 0.5, 1.0, quad_tol).value + G;
    } catch (const QuadratureError& e) {
        throw PreconditionError(std::string("thm4_bound: weight integral diverges: ") + e.what());
    }
    if (!(h0 >= 0.0) || !(h1 >= 0.0))
        throw PreconditionError("thm4_bound: negative half-interval bracket");

    const double shared = std::pow(1.0 / (p + 1.0), 1.0 / p) *
                          (std::pow(h0, 1.0 / q) + std::pow(h1, 1.0 / q));
    BoundConstants constants;
    constants.delta_phi = dphi;
    constants.G = G;
    constants.G_proof_variant = G_proof;
    return {dphi / std::pow(2.0, 1.0 / q) * shared, 0.5 * dphi * shared, constants};
}

const char* corollary_name(CorollaryId id) {
    switch (id) {
        case CorollaryId::c1: return "c1";
        case CorollaryId::c2: return "c2";
        case CorollaryId::c3: return "c3";
        case CorollaryId::k1: return "k1";
        case CorollaryId::k2: return "k2";
        case CorollaryId::k3: return "k3";
        case CorollaryId::c4: return "c4";
        case CorollaryId::c5: return "c5";
        case CorollaryId::c6: return "c6";
        case CorollaryId::r10: return "r10";
        case CorollaryId::r20: return "r20";
        case CorollaryId::r30: return "r30";
    }
    throw std::invalid_argument("corollary_name: unknown id");
}

CorollaryId corollary_from_name(const std::string& name) {
    if (name == "c1") return CorollaryId::c1;
    if (name == "c2") return CorollaryId::c2;
    if (name == "c3") return CorollaryId::c3;
    if (name == "k1") return CorollaryId::k1;
    if (name == "k2") return CorollaryId::k2;
    if (name == "k3") return CorollaryId::k3;
    if (name == "c4") return CorollaryId::c4;
    if (name == "c5") return CorollaryId::c5;
    if (name == "c6") return CorollaryId::c6;
    if (name == "r10") return CorollaryId::r10;
    if (name == "r20") return CorollaryId::r20;
    if (name == "r30") return CorollaryId::r30;
    throw std::invalid_argument("unknown corollary id: " + name);
}

namespace {

struct CorollaryContext {
    double dphi;
    double da;    // |f'(phi_a)|
    double db;    // |f'(phi_b)|
    double s;
    std::optional<StrongParams> strong;
};

const StrongParams& need_strong(const CorollaryContext& ctx, const char* id) {
    if (!ctx.strong)
        throw std::invalid_argument(std::string("corollary ") + id +
                                    ": StrongParams (c, q) required");
    return *ctx.strong;
}

// Strong-term constants, recomputed exactly as the parent bounds define
// them (including their positivity preconditions).
double constant_A(const CorollaryContext& ctx, const char* id) {
    const StrongParams& sp = need_strong(ctx, id);
    const double A = std::pow(sp.c, sp.q) * std::pow(ctx.dphi, 2.0 * sp.q) *
                         beta(sp.q + 1.0, sp.q + 1.0) -
                     (sp.c / 6.0) * ctx.dphi * ctx.dphi;
    if (sp.c > 0.0 && !(A > 0.0))
        throw PreconditionError(std::string("corollary ") + id + ": A <= 0 with c > 0");
    return A;
}

double constant_G(const CorollaryContext& ctx, const char* id) {
    const StrongParams& sp = need_strong(ctx, id);
    const double G = sp.c * std::pow(ctx.dphi, 2.0 * sp.q) * incomplete_beta_half(sp.q) -
                     (sp.c / 12.0) * ctx.dphi * ctx.dphi;
    if (sp.c > 0.0 && !(G > 0.0))
        throw PreconditionError(std::string("corollary ") + id + ": G <= 0 with c > 0");
    return G;
}

double holder_prefactor(const CorollaryContext& ctx, const StrongParams& sp) {
    return ctx.dphi / std::pow(2.0, 1.0 / sp.q) * std::pow(1.0 / (sp.p + 1.0), 1.0 / sp.p);
}

}  // namespace

CorollaryResult corollary_bound(CorollaryId id, const DifferentiableFunction& f,
                                const PhiMap& phi, const CorollaryParams& params,
                                double quad_tol) {
    require_oriented(phi);
    const CorollaryContext ctx{phi.delta(), std::abs(f.derivative(phi.phi_a())),
                               std::abs(f.derivative(phi.phi_b())), params.s, params.strong};
    if (id == CorollaryId::c2 || id == CorollaryId::c5 || id == CorollaryId::k2 ||
        id == CorollaryId::r20) {
        if (!(ctx.s > 0.0) || !(ctx.s < 1.0))
            throw std::invalid_argument("corollary_bound: require s in (0, 1)");
    }

    const auto h_linear = make_builtin_h(HFamily::h_linear);
    const auto h_one = make_builtin_h(HFamily::h_one);

    double printed = 0.0, theorem = 0.0;
    switch (id) {
        case CorollaryId::c1:
            printed = ctx.dphi * (ctx.db + ctx.da) / 8.0;
            theorem = thm1_bound(f, phi, h_linear, quad_tol);
            break;
        case CorollaryId::c2: {
            const double s = ctx.s;
            printed = 0.5 * ctx.dphi * (s + std::pow(2.0, -(s + 1.0))) * (ctx.db + ctx.da) /
                      ((s + 1.0) * (s + 2.0));
            theorem = thm1_bound(f, phi, make_builtin_h(HFamily::h_power, s), quad_tol);
            break;
        }
        case CorollaryId::c3:
            printed = 0.5 * ctx.dphi * (ctx.db + ctx.da) / 2.0;
            theorem = thm1_bound(f, phi, h_one, quad_tol);
            break;
        case CorollaryId::k1: {
            const StrongParams& sp = need_strong(ctx, "k1");
            const double A = constant_A(ctx, "k1");
            printed = holder_prefactor(ctx, sp) *
                      std::pow(0.5 * (std::pow(ctx.db, sp.q) + std::pow(ctx.da, sp.q)) + A,
                               1.0 / sp.q);
            theorem = thm2_bound(f, phi, h_linear, sp, quad_tol).bound;
            break;
        }
        case CorollaryId::k2: {
            const StrongParams& sp = need_strong(ctx, "k2");
            const double A = constant_A(ctx, "k2");
            printed = holder_prefactor(ctx, sp) *
                      std::pow((std::pow(ctx.db, sp.q) + std::pow(ctx.da, sp.q)) / (ctx.s + 1.0) +
                                   A,
                               1.0 / sp.q);
            theorem = thm2_bound(f, phi, make_builtin_h(HFamily::h_power, ctx.s), sp, quad_tol)
                          .bound;
            break;
        }
        case CorollaryId::k3: {
            const StrongParams& sp = need_strong(ctx, "k3");
            const double A = constant_A(ctx, "k3");
            printed = holder_prefactor(ctx, sp) *
                      std::pow(std::pow(ctx.db, sp.q) + std::pow(ctx.da, sp.q) + A, 1.0 / sp.q);
            theorem = thm2_bound(f, phi, h_one, sp, quad_tol).bound;
            break;
        }
        case CorollaryId::c4:
            printed = ctx.dphi * (ctx.da + ctx.db) / 8.0;
            theorem = thm3_bound(f, phi, h_linear, quad_tol);
            break;
        case CorollaryId::c5: {
            const double s = ctx.s;
            printed = ctx.dphi * (1.0 + (s + 3.0) / std::pow(2.0, s + 2.0)) * (ctx.da + ctx.db) /
                      ((s + 1.0) * (s + 2.0));
            theorem = thm3_bound(f, phi, make_builtin_h(HFamily::h_power, s), quad_tol);
            break;
        }
        case CorollaryId::c6:
            printed = ctx.dphi * (ctx.da + ctx.db) / 4.0;
            theorem = thm3_bound(f, phi, h_one, quad_tol);
            break;
        case CorollaryId::r10: {
            const StrongParams& sp = need_strong(ctx, "r10");
            const double G = constant_G(ctx, "r10");
            const double daq = std::pow(ctx.da, sp.q), dbq = std::pow(ctx.db, sp.q);
            printed = holder_prefactor(ctx, sp) *
                      (std::pow((daq + 3.0 * dbq) / 8.0 + G, 1.0 / sp.q) +
                       std::pow((3.0 * daq + dbq) / 8.0 + G, 1.0 / sp.q));
            theorem = thm4_bound(f, phi, h_linear, sp, quad_tol).bound_printed;
            break;
        }
        case CorollaryId::r20: {
            const StrongParams& sp = need_strong(ctx, "r20");
            const double G = constant_G(ctx, "r20");
            const double s = ctx.s;
            const double daq = std::pow(ctx.da, sp.q), dbq = std::pow(ctx.db, sp.q);
            const double lo_w = 1.0 / (std::pow(2.0, s + 1.0) * (s + 1.0));
            const double hi_w = (1.0 - std::pow(2.0, -(s + 1.0))) / (s + 1.0);
            printed = holder_prefactor(ctx, sp) *
                      (std::pow(lo_w * daq + hi_w * dbq + G, 1.0 / sp.q) +
                       std::pow(hi_w * daq + lo_w * dbq + G, 1.0 / sp.q));
            theorem = thm4_bound(f, phi, make_builtin_h(HFamily::h_power, s), sp, quad_tol)
                          .bound_printed;
            break;
        }
        case CorollaryId::r30: {
            const StrongParams& sp = need_strong(ctx, "r30");
            const double G = constant_G(ctx, "r30");
            printed = ctx.dphi / std::pow(2.0, 1.0 / sp.q - 1.0) *
                      std::pow(1.0 / (sp.p + 1.0), 1.0 / sp.p) *
                      std::pow(0.5 * (std::pow(ctx.db, sp.q) + std::pow(ctx.da, sp.q)) + G,
                               1.0 / sp.q);
            theorem = thm4_bound(f, phi, h_one, sp, quad_tol).bound_printed;
            break;
        }
    }
    return {printed, theorem, printed - theorem};
}

}  // namespace hhv
