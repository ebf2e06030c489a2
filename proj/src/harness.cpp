#include "hhv/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hhv/inequalities.hpp"
#include "hhv/quadrature.hpp"

namespace hhv {

using ordered_json = nlohmann::ordered_json;

const char* const kToolVersion = "0.1.0";

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
    if (std::isnan(v))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_label_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

const char* check_name(Check c) {
    switch (c) {
        case Check::lemma1: return "lemma1";
        case Check::lemma2: return "lemma2";
        case Check::hh_classical: return "hh_classical";
        case Check::hh_phi: return "hh_phi";
        case Check::thm1: return "thm1";
        case Check::thm2: return "thm2";
        case Check::thm3: return "thm3";
        case Check::thm4: return "thm4";
        case Check::corollaries: return "corollaries";
    }
    throw std::invalid_argument("check_name: unknown check");
}

Check check_from_name(const std::string& name) {
    if (name == "lemma1") return Check::lemma1;
    if (name == "lemma2") return Check::lemma2;
    if (name == "hh_classical") return Check::hh_classical;
    if (name == "hh_phi") return Check::hh_phi;
    if (name == "thm1") return Check::thm1;
    if (name == "thm2") return Check::thm2;
    if (name == "thm3") return Check::thm3;
    if (name == "thm4") return Check::thm4;
    if (name == "corollaries") return Check::corollaries;
    throw ConfigError("unknown check: " + name);
}

ReportFormat format_from_name(const std::string& name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    throw ConfigError("unknown report format: " + name);
}

// --- config parsing ---------------------------------------------------

namespace {

const ordered_json& require_field(const ordered_json& j, const char* key,
                                  const std::string& ctx) {
    if (!j.contains(key))
        throw ConfigError(ctx + ": missing field '" + key + "'");
    return j.at(key);
}

std::string require_string(const ordered_json& j, const std::string& ctx) {
    if (!j.is_string())
        throw ConfigError(ctx + ": expected a string");
    return j.get<std::string>();
}

double require_number(const ordered_json& j, const std::string& ctx) {
    if (!j.is_number())
        throw ConfigError(ctx + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw ConfigError(ctx + ": expected a finite number");
    return v;
}

std::vector<double> number_array(const ordered_json& j, const std::string& ctx) {
    if (!j.is_array())
        throw ConfigError(ctx + ": expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(require_number(j.at(i), ctx + "[" + std::to_string(i) + "]"));
    return out;
}

FamilySpec parse_family(const ordered_json& j, const std::string& ctx) {
    if (!j.is_object())
        throw ConfigError(ctx + ": expected an object");
    FamilySpec spec;
    spec.family = require_string(require_field(j, "family", ctx), ctx + ".family");
    if (j.contains("params"))
        spec.params = number_array(j.at("params"), ctx + ".params");
    return spec;
}

HSpec parse_h(const ordered_json& j, const std::string& ctx) {
    if (!j.is_object())
        throw ConfigError(ctx + ": expected an object");
    HSpec spec;
    spec.family = require_string(require_field(j, "family", ctx), ctx + ".family");
    if (j.contains("s"))
        spec.s = require_number(j.at("s"), ctx + ".s");
    return spec;
}

CaseSpec parse_case(const ordered_json& j, const std::string& ctx) {
    if (!j.is_object())
        throw ConfigError(ctx + ": expected an object");
    CaseSpec cs;
    cs.label = require_string(require_field(j, "label", ctx), ctx + ".label");
    if (cs.label.empty())
        throw ConfigError(ctx + ".label: must be non-empty");
    if (cs.label.find_first_of(",\"\n\r") != std::string::npos)
        throw ConfigError(ctx + ".label: must not contain commas, quotes, or newlines");
    cs.f = parse_family(require_field(j, "f", ctx), ctx + ".f");
    cs.phi = parse_family(require_field(j, "phi", ctx), ctx + ".phi");
    cs.h = parse_h(require_field(j, "h", ctx), ctx + ".h");
    if (j.contains("c")) {
        cs.c = require_number(j.at("c"), ctx + ".c");
        if (cs.c < 0.0)
            throw ConfigError(ctx + ".c: must be >= 0");
    }
    if (j.contains("q"))
        cs.q = require_number(j.at("q"), ctx + ".q");
    if (j.contains("interval")) {
        const auto iv = number_array(j.at("interval"), ctx + ".interval");
        if (iv.size() != 2)
            throw ConfigError(ctx + ".interval: expected [lo, hi]");
        cs.lo = iv[0];
        cs.hi = iv[1];
    }
    const auto& checks = require_field(j, "checks", ctx);
    if (!checks.is_array())
        throw ConfigError(ctx + ".checks: expected an array of check names");
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const std::string name = require_string(
            checks.at(i), ctx + ".checks[" + std::to_string(i) + "]");
        try {
            cs.checks.push_back(check_from_name(name));
        } catch (const ConfigError& e) {
            throw ConfigError(ctx + ".checks[" + std::to_string(i) + "]: " + e.what());
        }
    }
    if (j.contains("seed")) {
        const auto& s = j.at("seed");
        if (!s.is_number_unsigned())
            throw ConfigError(ctx + ".seed: expected a non-negative integer");
        cs.seed = s.get<std::uint64_t>();
    }
    return cs;
}

// Rebuilds the case's objects once so family and parameter problems fail
// at load time with a field path rather than in the middle of a run.
void validate_case(const CaseSpec& cs, const std::string& ctx) {
    try {
        const Interval iv(cs.lo, cs.hi);
        make_builtin_function(function_family_from_name(cs.f.family), cs.f.params, iv);
        make_builtin_phi(phi_family_from_name(cs.phi.family), cs.phi.params, iv);
        make_builtin_h(h_family_from_name(cs.h.family), cs.h.s);
    } catch (const std::exception& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
}

SweepSpec parse_sweep(const ordered_json& j, const std::string& ctx) {
    if (!j.is_object())
        throw ConfigError(ctx + ": expected an object");
    SweepSpec sweep;
    sweep.parameter = require_string(require_field(j, "parameter", ctx), ctx + ".parameter");
    if (sweep.parameter != "c" && sweep.parameter != "q" && sweep.parameter != "s")
        throw ConfigError(ctx + ".parameter: must be one of \"c\", \"q\", \"s\"");
    sweep.grid = number_array(require_field(j, "grid", ctx), ctx + ".grid");
    if (sweep.grid.empty())
        throw ConfigError(ctx + ".grid: must be non-empty");
    for (double v : sweep.grid) {
        if (sweep.parameter == "c" && v < 0.0)
            throw ConfigError(ctx + ".grid: modulus values must be >= 0");
        if (sweep.parameter == "q" && !(v > 1.0))
            throw ConfigError(ctx + ".grid: exponent values must be > 1");
        if (sweep.parameter == "s" && !(v > 0.0 && v < 1.0))
            throw ConfigError(ctx + ".grid: s values must lie in (0, 1)");
    }
    return sweep;
}

}  // namespace

Config parse_config(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config: expected a top-level object");
    const auto& cases = require_field(j, "cases", "config");
    if (!cases.is_array() || cases.empty())
        throw ConfigError("config.cases: expected a non-empty array");

    Config config;
    std::set<std::string> labels;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const std::string ctx = "cases[" + std::to_string(i) + "]";
        CaseSpec cs = parse_case(cases.at(i), ctx);
        if (!labels.insert(cs.label).second)
            throw ConfigError(ctx + ".label: duplicate label '" + cs.label + "'");
        validate_case(cs, ctx);
        config.cases.push_back(std::move(cs));
    }
    if (j.contains("sweep"))
        config.sweep = parse_sweep(j.at("sweep"), "sweep");
    return config;
}

Config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::vector<CaseSpec> expand_sweep(const Config& config) {
    if (!config.sweep)
        throw ConfigError("config has no sweep block");
    const SweepSpec& sweep = *config.sweep;
    std::vector<CaseSpec> out;
    for (const CaseSpec& base : config.cases) {
        if (sweep.parameter == "s" && base.h.family != "h_power")
            continue;
        for (double v : sweep.grid) {
            CaseSpec cs = base;
            if (sweep.parameter == "c")
                cs.c = v;
            else if (sweep.parameter == "q")
                cs.q = v;
            else
                cs.h.s = v;
            cs.label += "@" + sweep.parameter + "=" + fmt_label_value(v);
            out.push_back(std::move(cs));
        }
    }
    if (out.empty())
        throw ConfigError("sweep over '" + sweep.parameter + "' applies to no case");
    return out;
}

// --- suite execution ---------------------------------------------------

namespace {

struct ResolvedCase {
    DifferentiableFunction f;
    PhiMap phi;
    HFunction h;
    Interval iv;
    HFamily h_family;
    std::optional<double> h_s;
    double c;
    std::uint64_t seed;
    std::optional<StrongParams> strong;
    std::string strong_reason;
};

ResolvedCase resolve_case(const CaseSpec& cs, const RunOptions& opts) {
    Interval iv(cs.lo, cs.hi);
    auto f = make_builtin_function(function_family_from_name(cs.f.family), cs.f.params, iv);
    auto phi = make_builtin_phi(phi_family_from_name(cs.phi.family), cs.phi.params, iv);
    const HFamily h_family = h_family_from_name(cs.h.family);
    auto h = make_builtin_h(h_family, cs.h.s);
    std::optional<StrongParams> strong;
    std::string strong_reason;
    if (!cs.q)
        strong_reason = "q not specified";
    else if (!(*cs.q > 1.0))
        strong_reason = "require q > 1";
    else
        strong = StrongParams(cs.c, *cs.q);
    return {std::move(f), std::move(phi), std::move(h), iv,    h_family, cs.h.s,
            cs.c,         cs.seed.value_or(opts.seed),  strong, strong_reason};
}

DifferentiableFunction abs_deriv_fn(const DifferentiableFunction& f) {
    DifferentiableFunction copy = f;
    return DifferentiableFunction(
        [copy](double x) { return std::abs(copy.derivative(x)); }, std::nullopt, f.domain(),
        "|" + f.label() + "'|");
}

DifferentiableFunction abs_deriv_pow_fn(const DifferentiableFunction& f, double q) {
    DifferentiableFunction copy = f;
    return DifferentiableFunction(
        [copy, q](double x) { return std::pow(std::abs(copy.derivative(x)), q); }, std::nullopt,
        f.domain(), "|" + f.label() + "'|^q");
}

// Lazily computed certificates shared by the checks of one case.
class CaseCerts {
  public:
    CaseCerts(const ResolvedCase& rc, const RunOptions& opts) : rc_(rc), opts_(opts) {}

    // f along the identity warp, plain convexity (h_linear, c = 0).
    const ConvexityCertificate& f_classical() {
        if (!f_classical_) {
            const auto id_phi = make_builtin_phi(PhiFamily::identity, {}, rc_.iv);
            f_classical_ = certify(rc_.f, id_phi, make_builtin_h(HFamily::h_linear), 0.0,
                                   opts_.samples, rc_.seed);
        }
        return *f_classical_;
    }

    // f along the case warp, plain convexity.
    const ConvexityCertificate& f_warped() {
        if (!f_warped_)
            f_warped_ = certify(rc_.f, rc_.phi, make_builtin_h(HFamily::h_linear), 0.0,
                                opts_.samples, rc_.seed);
        return *f_warped_;
    }

    // |f'| under the case (phi, h, c): the trapezoid/midpoint hypotheses.
    const ConvexityCertificate& abs_deriv() {
        if (!abs_deriv_) {
            const auto g = abs_deriv_fn(rc_.f);
            abs_deriv_ = certify(g, rc_.phi, rc_.h, rc_.c, opts_.samples, rc_.seed);
        }
        return *abs_deriv_;
    }

    // |f'|^q under the case (phi, h, c): the Holder-refinement hypotheses.
    const ConvexityCertificate& abs_deriv_pow() {
        if (!abs_deriv_pow_) {
            const auto g = abs_deriv_pow_fn(rc_.f, rc_.strong->q);
            abs_deriv_pow_ = certify(g, rc_.phi, rc_.h, rc_.c, opts_.samples, rc_.seed);
        }
        return *abs_deriv_pow_;
    }

  private:
    const ResolvedCase& rc_;
    const RunOptions& opts_;
    std::optional<ConvexityCertificate> f_classical_;
    std::optional<ConvexityCertificate> f_warped_;
    std::optional<ConvexityCertificate> abs_deriv_;
    std::optional<ConvexityCertificate> abs_deriv_pow_;
};

void mark_skip(VerificationRecord& r, const std::string& reason) {
    r.preconditions_ok = false;
    r.holds = false;
    r.reason = reason;
    r.lhs = kNaN;
    r.bound = kNaN;
    r.margin = kNaN;
}

void finish_bound(VerificationRecord& r, double lhs, double bound, const std::string& note) {
    r.lhs = lhs;
    r.bound = bound;
    r.margin = bound - lhs;
    r.preconditions_ok = true;
    r.holds = lhs <= bound + r.tolerances.slack;
    r.reason = note;
}

// Runs one record body with per-record isolation: hypothesis violations
// become skips, numerical breakdowns become NaN failures.
template <class Fn>
void run_record(std::vector<VerificationRecord>& out, VerificationRecord r, Fn&& fill) {
    try {
        fill(r);
    } catch (const PreconditionError& e) {
        mark_skip(r, e.what());
    } catch (const QuadratureError& e) {
        r.preconditions_ok = true;
        r.holds = false;
        r.reason = std::string("quadrature: ") + e.what();
        r.lhs = kNaN;
        r.bound = kNaN;
        r.margin = kNaN;
    } catch (const std::exception& e) {
        r.preconditions_ok = true;
        r.holds = false;
        r.reason = std::string("error: ") + e.what();
        r.lhs = kNaN;
        r.bound = kNaN;
        r.margin = kNaN;
    }
    out.push_back(std::move(r));
}

VerificationRecord base_record(const CaseSpec& cs, std::string check, std::uint64_t seed,
                               const RunOptions& opts) {
    VerificationRecord r;
    r.label = cs.label;
    r.check = std::move(check);
    r.seed = seed;
    r.tolerances.quad_tol = opts.quad_tol;
    r.tolerances.slack = 10.0 * opts.quad_tol;
    return r;
}

std::string ok_note(const ResolvedCase& rc, bool uses_derivative) {
    if (uses_derivative && !rc.f.has_analytic_derivative())
        return "ok (numeric derivative)";
    return "ok";
}

std::vector<CorollaryId> corollary_ids_for(HFamily family, bool with_strong) {
    switch (family) {
        case HFamily::h_linear:
            return with_strong
                       ? std::vector<CorollaryId>{CorollaryId::c1, CorollaryId::c4,
                                                  CorollaryId::k1, CorollaryId::r10}
                       : std::vector<CorollaryId>{CorollaryId::c1, CorollaryId::c4};
        case HFamily::h_power:
            return with_strong
                       ? std::vector<CorollaryId>{CorollaryId::c2, CorollaryId::c5,
                                                  CorollaryId::k2, CorollaryId::r20}
                       : std::vector<CorollaryId>{CorollaryId::c2, CorollaryId::c5};
        case HFamily::h_one:
            return with_strong
                       ? std::vector<CorollaryId>{CorollaryId::c3, CorollaryId::c6,
                                                  CorollaryId::k3, CorollaryId::r30}
                       : std::vector<CorollaryId>{CorollaryId::c3, CorollaryId::c6};
        case HFamily::h_godunova:
            return {};
    }
    return {};
}

bool corollary_needs_strong(CorollaryId id) {
    switch (id) {
        case CorollaryId::k1:
        case CorollaryId::k2:
        case CorollaryId::k3:
        case CorollaryId::r10:
        case CorollaryId::r20:
        case CorollaryId::r30:
            return true;
        default:
            return false;
    }
}

void run_case_checks(const CaseSpec& cs, const ResolvedCase& rc, const RunOptions& opts,
                     std::vector<VerificationRecord>& out) {
    CaseCerts certs(rc, opts);
    const double qt = opts.quad_tol;

    if (cs.checks.empty()) {
        VerificationRecord r = base_record(cs, "case", rc.seed, opts);
        mark_skip(r, "no checks requested");
        out.push_back(std::move(r));
        return;
    }

    for (Check check : cs.checks) {
        switch (check) {
            case Check::lemma1:
                run_record(out, base_record(cs, "lemma1", rc.seed, opts), [&](auto& r) {
                    const double res = std::abs(lemma1_residual(rc.f, rc.phi, rc.c, qt));
                    finish_bound(r, res, 0.0, ok_note(rc, true));
                });
                break;
            case Check::lemma2:
                run_record(out, base_record(cs, "lemma2", rc.seed, opts), [&](auto& r) {
                    const double res = std::abs(lemma2_residual(rc.f, rc.phi, rc.c, qt));
                    finish_bound(r, res, 0.0, ok_note(rc, true));
                });
                break;
            case Check::hh_classical:
                run_record(out, base_record(cs, "hh_classical", rc.seed, opts), [&](auto& r) {
                    const auto& cert = certs.f_classical();
                    r.certificate = cert;
                    r.tolerances.slack += cert.slack;
                    if (!cert.holds) {
                        mark_skip(r, "convexity certification failed for f");
                        return;
                    }
                    const GapPair g = hh_classical_gap(rc.f, rc.iv, qt);
                    finish_bound(r, std::max(-g.left_gap, -g.right_gap), 0.0, ok_note(rc, false));
                });
                break;
            case Check::hh_phi:
                run_record(out, base_record(cs, "hh_phi", rc.seed, opts), [&](auto& r) {
                    const auto& cert = certs.f_warped();
                    r.certificate = cert;
                    r.tolerances.slack += cert.slack;
                    if (!cert.holds) {
                        mark_skip(r, "convexity certification failed for f along phi");
                        return;
                    }
                    const GapPair g = hh_phi_gap(rc.f, rc.phi, qt);
                    finish_bound(r, std::max(-g.left_gap, -g.right_gap), 0.0, ok_note(rc, false));
                });
                break;
            case Check::thm1:
                run_record(out, base_record(cs, "thm1", rc.seed, opts), [&](auto& r) {
                    const auto& cert = certs.abs_deriv();
                    r.certificate = cert;
                    r.tolerances.slack += cert.slack;
                    if (!cert.holds) {
                        mark_skip(r, "certification failed: |f'| not strongly h-convex at c");
                        return;
                    }
                    const double bound = thm1_bound(rc.f, rc.phi, rc.h, qt);
                    finish_bound(r, trapezoid_defect(rc.f, rc.phi, qt), bound, ok_note(rc, true));
                });
                break;
            case Check::thm2:
                run_record(out, base_record(cs, "thm2", rc.seed, opts), [&](auto& r) {
                    if (!rc.strong) {
                        mark_skip(r, rc.strong_reason);
                        return;
                    }
                    const auto& cert = certs.abs_deriv_pow();
                    r.certificate = cert;
                    r.tolerances.slack += cert.slack;
                    if (!cert.holds) {
                        mark_skip(r, "certification failed: |f'|^q not strongly h-convex at c");
                        return;
                    }
                    const auto t2 = thm2_bound(rc.f, rc.phi, rc.h, *rc.strong, qt);
                    finish_bound(r, trapezoid_defect(rc.f, rc.phi, qt), t2.bound,
                                 ok_note(rc, true));
                });
                break;
            case Check::thm3:
                run_record(out, base_record(cs, "thm3", rc.seed, opts), [&](auto& r) {
                    const auto& cert = certs.abs_deriv();
                    r.certificate = cert;
                    r.tolerances.slack += cert.slack;
                    if (!cert.holds) {
                        mark_skip(r, "certification failed: |f'| not strongly h-convex at c");
                        return;
                    }
                    const double bound = thm3_bound(rc.f, rc.phi, rc.h, qt);
                    finish_bound(r, midpoint_defect(rc.f, rc.phi, qt), bound, ok_note(rc, true));
                });
                break;
            case Check::thm4:
                run_record(out, base_record(cs, "thm4", rc.seed, opts), [&](auto& r) {
                    if (!rc.strong) {
                        mark_skip(r, rc.strong_reason);
                        return;
                    }
                    const auto& cert = certs.abs_deriv_pow();
                    r.certificate = cert;
                    r.tolerances.slack += cert.slack;
                    if (!cert.holds) {
                        mark_skip(r, "certification failed: |f'|^q not strongly h-convex at c");
                        return;
                    }
                    const auto t4 = thm4_bound(rc.f, rc.phi, rc.h, *rc.strong, qt);
                    finish_bound(r, midpoint_defect(rc.f, rc.phi, qt),
                                 std::max(t4.bound_printed, t4.bound_proof), ok_note(rc, true));
                });
                break;
            case Check::corollaries: {
                const auto ids = corollary_ids_for(rc.h_family, true);
                if (ids.empty()) {
                    VerificationRecord r = base_record(cs, "corollaries", rc.seed, opts);
                    mark_skip(r, "no printed corollary for weight family " + rc.h.label());
                    out.push_back(std::move(r));
                    break;
                }
                for (CorollaryId id : ids) {
                    const std::string name = std::string("corollary.") + corollary_name(id);
                    run_record(out, base_record(cs, name, rc.seed, opts), [&](auto& r) {
                        const bool needs_strong = corollary_needs_strong(id);
                        if (needs_strong && !rc.strong) {
                            mark_skip(r, rc.strong_reason);
                            return;
                        }
                        const auto& cert =
                            needs_strong ? certs.abs_deriv_pow() : certs.abs_deriv();
                        r.certificate = cert;
                        r.tolerances.slack += cert.slack;
                        if (!cert.holds) {
                            mark_skip(r, "certification failed for the parent bound hypothesis");
                            return;
                        }
                        CorollaryParams params;
                        if (rc.h_s)
                            params.s = *rc.h_s;
                        params.strong = rc.strong;
                        const CorollaryResult res = corollary_bound(id, rc.f, rc.phi, params, qt);
                        r.lhs = res.printed_value;
                        r.bound = res.theorem_value;
                        r.margin = res.theorem_value - res.printed_value;
                        r.discrepancy = res.discrepancy;
                        r.preconditions_ok = true;
                        const double thr = 1e-6 * std::max(1.0, std::abs(res.theorem_value));
                        r.holds = std::abs(res.discrepancy) <= thr;
                        r.reason = r.holds ? ok_note(rc, true)
                                           : "printed constant disagrees with the theorem path";
                    });
                }
                break;
            }
        }
    }
}

bool is_corollary_check(const std::string& check) {
    return check.rfind("corollary.", 0) == 0;
}

Summary summarize(const std::vector<VerificationRecord>& records) {
    Summary s;
    std::set<std::string> discrepant;
    for (const auto& r : records) {
        ++s.total;
        if (!r.preconditions_ok) {
            ++s.precondition_skips;
        } else if (is_corollary_check(r.check)) {
            if (std::isnan(r.lhs)) {
                ++s.failed;
            } else {
                ++s.passed;
                if (!r.holds)
                    discrepant.insert(r.check);
            }
        } else if (r.holds) {
            ++s.passed;
        } else {
            ++s.failed;
        }
    }
    s.discrepancies = static_cast<long>(discrepant.size());
    return s;
}

Report make_report(std::vector<VerificationRecord> records, const RunOptions& opts) {
    Report report;
    report.tool_version = kToolVersion;
    report.seed = opts.seed;
    report.quad_tol = opts.quad_tol;
    report.samples = opts.samples;
    report.summary = summarize(records);
    report.records = std::move(records);
    return report;
}

}  // namespace

Report run_suite(const std::vector<CaseSpec>& cases, const RunOptions& opts) {
    std::vector<VerificationRecord> records;
    for (const CaseSpec& cs : cases) {
        try {
            const ResolvedCase rc = resolve_case(cs, opts);
            run_case_checks(cs, rc, opts, records);
        } catch (const std::exception& e) {
            VerificationRecord r = base_record(cs, "case", cs.seed.value_or(opts.seed), opts);
            mark_skip(r, std::string("case setup failed: ") + e.what());
            records.push_back(std::move(r));
        }
    }
    return make_report(std::move(records), opts);
}

Report run_certify(const std::vector<CaseSpec>& cases, const RunOptions& opts) {
    std::vector<VerificationRecord> records;
    for (const CaseSpec& cs : cases) {
        try {
            const ResolvedCase rc = resolve_case(cs, opts);
            auto emit = [&](const std::string& check, const ConvexityCertificate& cert) {
                VerificationRecord r = base_record(cs, check, rc.seed, opts);
                r.certificate = cert;
                r.lhs = cert.max_violation;
                r.bound = cert.slack;
                r.margin = cert.slack - cert.max_violation;
                r.preconditions_ok = true;
                r.holds = cert.holds;
                r.reason = cert.holds ? "ok" : "certification refuted on samples";
                records.push_back(std::move(r));
            };
            emit("certify.f",
                 certify(rc.f, rc.phi, make_builtin_h(HFamily::h_linear), 0.0, opts.samples,
                         rc.seed));
            emit("certify.abs_deriv",
                 certify(abs_deriv_fn(rc.f), rc.phi, rc.h, rc.c, opts.samples, rc.seed));
            if (rc.strong) {
                emit("certify.abs_deriv_pow_q",
                     certify(abs_deriv_pow_fn(rc.f, rc.strong->q), rc.phi, rc.h, rc.c,
                             opts.samples, rc.seed));
            } else {
                VerificationRecord r = base_record(cs, "certify.abs_deriv_pow_q", rc.seed, opts);
                mark_skip(r, rc.strong_reason);
                records.push_back(std::move(r));
            }
        } catch (const std::exception& e) {
            VerificationRecord r = base_record(cs, "case", cs.seed.value_or(opts.seed), opts);
            mark_skip(r, std::string("case setup failed: ") + e.what());
            records.push_back(std::move(r));
        }
    }
    return make_report(std::move(records), opts);
}

// --- serialization -----------------------------------------------------

namespace {

ordered_json certificate_to_json(const ConvexityCertificate& c) {
    ordered_json j;
    j["holds"] = c.holds;
    j["max_violation"] = c.max_violation;
    j["worst_point"] = {c.worst_point[0], c.worst_point[1], c.worst_point[2]};
    j["samples_used"] = c.samples_used;
    j["seed"] = c.seed;
    j["slack"] = c.slack;
    j["scale"] = c.scale;
    j["range_nonnegative"] = c.range_nonnegative;
    return j;
}

ConvexityCertificate certificate_from_json(const ordered_json& j) {
    ConvexityCertificate c{};
    c.holds = j.at("holds").get<bool>();
    c.max_violation = j.at("max_violation").get<double>();
    const auto& wp = j.at("worst_point");
    c.worst_point = {wp.at(0).get<double>(), wp.at(1).get<double>(), wp.at(2).get<double>()};
    c.samples_used = j.at("samples_used").get<long>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.slack = j.at("slack").get<double>();
    c.scale = j.at("scale").get<double>();
    c.range_nonnegative = j.at("range_nonnegative").get<bool>();
    return c;
}

ordered_json number_or_null(double v) {
    if (std::isnan(v))
        return nullptr;
    return v;
}

double number_from(const ordered_json& j) {
    if (j.is_null())
        return kNaN;
    return j.get<double>();
}

ordered_json record_to_json(const VerificationRecord& r) {
    ordered_json j;
    j["label"] = r.label;
    j["check"] = r.check;
    j["lhs"] = number_or_null(r.lhs);
    j["bound"] = number_or_null(r.bound);
    j["margin"] = number_or_null(r.margin);
    j["holds"] = r.holds;
    j["preconditions_ok"] = r.preconditions_ok;
    j["reason"] = r.reason;
    j["discrepancy"] = r.discrepancy ? ordered_json(*r.discrepancy) : ordered_json(nullptr);
    j["seed"] = r.seed;
    j["tolerances"] = {{"quad_tol", r.tolerances.quad_tol}, {"slack", r.tolerances.slack}};
    j["certificate"] = r.certificate ? certificate_to_json(*r.certificate)
                                     : ordered_json(nullptr);
    return j;
}

VerificationRecord record_from_json(const ordered_json& j) {
    VerificationRecord r;
    r.label = j.at("label").get<std::string>();
    r.check = j.at("check").get<std::string>();
    r.lhs = number_from(j.at("lhs"));
    r.bound = number_from(j.at("bound"));
    r.margin = number_from(j.at("margin"));
    r.holds = j.at("holds").get<bool>();
    r.preconditions_ok = j.at("preconditions_ok").get<bool>();
    r.reason = j.at("reason").get<std::string>();
    if (!j.at("discrepancy").is_null())
        r.discrepancy = j.at("discrepancy").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.tolerances.quad_tol = j.at("tolerances").at("quad_tol").get<double>();
    r.tolerances.slack = j.at("tolerances").at("slack").get<double>();
    if (!j.at("certificate").is_null())
        r.certificate = certificate_from_json(j.at("certificate"));
    return r;
}

}  // namespace

std::string report_to_csv(const Report& report) {
    std::ostringstream out;
    out << "label,check,lhs,bound,margin,holds,preconditions_ok,discrepancy,seed\n";
    for (const auto& r : report.records) {
        out << r.label << ',' << r.check << ',' << fmt17(r.lhs) << ',' << fmt17(r.bound) << ','
            << fmt17(r.margin) << ',' << (r.holds ? "true" : "false") << ','
            << (r.preconditions_ok ? "true" : "false") << ','
            << (r.discrepancy ? fmt17(*r.discrepancy) : std::string()) << ',' << r.seed << '\n';
    }
    return out.str();
}

std::string report_to_json(const Report& report) {
    ordered_json j;
    j["tool_version"] = report.tool_version;
    j["seed"] = report.seed;
    j["quad_tol"] = report.quad_tol;
    j["samples"] = report.samples;
    j["summary"] = {{"total", report.summary.total},
                    {"passed", report.summary.passed},
                    {"failed", report.summary.failed},
                    {"precondition_skips", report.summary.precondition_skips},
                    {"discrepancies", report.summary.discrepancies}};
    j["records"] = ordered_json::array();
    for (const auto& r : report.records)
        j["records"].push_back(record_to_json(r));
    return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("report is not valid JSON: ") + e.what());
    }
    try {
        Report report;
        report.tool_version = j.at("tool_version").get<std::string>();
        report.seed = j.at("seed").get<std::uint64_t>();
        report.quad_tol = j.at("quad_tol").get<double>();
        report.samples = j.at("samples").get<int>();
        const auto& s = j.at("summary");
        report.summary.total = s.at("total").get<long>();
        report.summary.passed = s.at("passed").get<long>();
        report.summary.failed = s.at("failed").get<long>();
        report.summary.precondition_skips = s.at("precondition_skips").get<long>();
        report.summary.discrepancies = s.at("discrepancies").get<long>();
        for (const auto& rj : j.at("records"))
            report.records.push_back(record_from_json(rj));
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed report JSON: ") + e.what());
    }
}

void emit_report(const Report& report, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::csv)
        out << report_to_csv(report);
    else
        out << report_to_json(report);
}

int exit_code(const Report& report) {
    return report.summary.failed > 0 ? 1 : 0;
}

}  // namespace hhv
