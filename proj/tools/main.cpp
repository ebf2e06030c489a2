// hhverify: config-driven checker for warped trapezoid/midpoint bounds
// under strong h-convexity hypotheses.
//
// Exit codes: 0 all checks hold, 1 at least one record failed,
// 2 configuration or usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hhv/harness.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    double tol = 1e-10;
    int samples = 4096;
    std::uint64_t seed = 42;
    std::string out_path;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON suite description")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--tol", o.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--samples", o.samples, "random triples per certificate")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", o.seed, "base RNG seed for certification sampling");
    cmd->add_option("--out", o.out_path, "write the report to this file instead of stdout");
    cmd->add_option("--format", o.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}));
}

int write_report(const hhv::Report& report, const std::string& format,
                 const std::string& out_path) {
    const auto fmt = hhv::format_from_name(format);
    if (out_path.empty()) {
        hhv::emit_report(report, fmt, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return 2;
        }
        hhv::emit_report(report, fmt, out);
    }
    return hhv::exit_code(report);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw hhv::ConfigError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verifies integral identities and Hermite-Hadamard-type bounds "
                 "for strongly h-convex compositions"};
    app.require_subcommand(1);

    CommonOpts copts;
    CLI::App* certify = app.add_subcommand(
        "certify", "run only the convexity certifications for each case");
    add_common(certify, copts);
    CLI::App* verify =
        app.add_subcommand("verify", "run every check requested by the config");
    add_common(verify, copts);
    CLI::App* sweep = app.add_subcommand(
        "sweep", "expand the config's sweep block, then run the checks");
    add_common(sweep, copts);

    std::string report_in;
    std::string report_format = "csv";
    std::string report_out;
    CLI::App* report = app.add_subcommand("report", "re-emit a stored JSON report");
    report->add_option("--in", report_in, "JSON report produced by verify/sweep/certify")
        ->required()
        ->check(CLI::ExistingFile);
    report->add_option("--format", report_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    report->add_option("--out", report_out, "write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (report->parsed()) {
            const hhv::Report rep = hhv::report_from_json(slurp(report_in));
            return write_report(rep, report_format, report_out);
        }

        const hhv::Config config = hhv::load_config(copts.config_path);
        hhv::RunOptions run;
        run.quad_tol = copts.tol;
        run.samples = copts.samples;
        run.seed = copts.seed;

        hhv::Report rep;
        if (certify->parsed())
            rep = hhv::run_certify(config.cases, run);
        else if (sweep->parsed())
            rep = hhv::run_suite(hhv::expand_sweep(config), run);
        else
            rep = hhv::run_suite(config.cases, run);
        return write_report(rep, copts.format, copts.out_path);
    } catch (const hhv::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
