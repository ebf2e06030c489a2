#pragma once

// Config-driven suite runner: loads JSON case descriptions, runs the
// requested checks with per-case isolation, and serializes reports as CSV
// or JSON. Reports are deterministic: rerunning the same config with the
// same seed reproduces them byte for byte.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hhv/convexity.hpp"
#include "hhv/funcspace.hpp"

namespace hhv {

// Configuration or I/O problem (malformed JSON, unknown family, duplicate
// label, unreadable file). Maps to exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Check {
    lemma1,
    lemma2,
    hh_classical,
    hh_phi,
    thm1,
    thm2,
    thm3,
    thm4,
    corollaries,
};

const char* check_name(Check c);
Check check_from_name(const std::string& name);

struct FamilySpec {
    std::string family;
    std::vector<double> params;
};

struct HSpec {
    std::string family;
    std::optional<double> s;
};

struct CaseSpec {
    std::string label;
    FamilySpec f;
    FamilySpec phi;
    HSpec h;
    double c = 0.0;
    std::optional<double> q;
    double lo = 0.0;
    double hi = 1.0;
    std::vector<Check> checks;
    std::optional<std::uint64_t> seed;  // falls back to the run seed
};

struct SweepSpec {
    std::string parameter;  // "c", "q", or "s"
    std::vector<double> grid;
};

struct Config {
    std::vector<CaseSpec> cases;
    std::optional<SweepSpec> sweep;
};

struct Tolerances {
    double quad_tol = 0.0;
    double slack = 0.0;
};

// One check outcome. For bound checks, holds <=> lhs <= bound + slack.
// For corollary rows, lhs/bound are the printed and theorem-path values
// and holds means the two agree within tolerance; a disagreement is
// reported through `discrepancy`, counted separately from failures.
struct VerificationRecord {
    std::string label;
    std::string check;
    double lhs = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    bool holds = false;
    bool preconditions_ok = false;
    std::string reason;
    std::optional<double> discrepancy;
    std::uint64_t seed = 0;
    Tolerances tolerances;
    std::optional<ConvexityCertificate> certificate;
};

// total = passed + failed + precondition_skips. Corollary rows count as
// passed once both paths evaluate; `discrepancies` is the number of
// distinct corollary ids whose printed constant disagrees with the
// theorem path anywhere in the suite.
struct Summary {
    long total = 0;
    long passed = 0;
    long failed = 0;
    long precondition_skips = 0;
    long discrepancies = 0;
};

struct Report {
    std::string tool_version;
    std::uint64_t seed = 0;
    double quad_tol = 0.0;
    int samples = 0;
    std::vector<VerificationRecord> records;
    Summary summary;
};

struct RunOptions {
    double quad_tol = 1e-10;
    int samples = 4096;
    std::uint64_t seed = 42;
};

extern const char* const kToolVersion;

// Parses and validates a config. Diagnostics carry the offending field
// path (e.g. "cases[3].h.s"). Labels must be unique and CSV-safe.
Config load_config(const std::string& path);
Config parse_config(const std::string& text);

// Applies the config's sweep block: clones each applicable case once per
// grid value, rewriting the swept parameter and suffixing the label.
std::vector<CaseSpec> expand_sweep(const Config& config);

// Runs every requested check of every case, in order, isolating failures
// per record. Never throws for per-case math problems; those become
// records (precondition skips or NaN failures).
Report run_suite(const std::vector<CaseSpec>& cases, const RunOptions& opts);

// Certification-only run: certifies f, |f'| and (when q is given) |f'|^q
// for each case at its modulus c. A certificate that does not hold counts
// as a failure here, since it was explicitly requested.
Report run_certify(const std::vector<CaseSpec>& cases, const RunOptions& opts);

enum class ReportFormat { csv, json };
ReportFormat format_from_name(const std::string& name);

// CSV columns: label,check,lhs,bound,margin,holds,preconditions_ok,
// discrepancy,seed. Numbers carry 17 significant digits; NaN prints as
// "nan"; an absent discrepancy prints as an empty field.
std::string report_to_csv(const Report& report);

// JSON mirrors the record fields verbatim; NaN serializes as null.
std::string report_to_json(const Report& report);
Report report_from_json(const std::string& text);

void emit_report(const Report& report, ReportFormat format, std::ostream& out);

// 0 if no record failed, 1 otherwise. Config errors map to 2 in the CLI.
int exit_code(const Report& report);

}  // namespace hhv
