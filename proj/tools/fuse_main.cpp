#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "fuse/combinators.hpp"
#include "fuse/desiderata.hpp"
#include "fuse/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUndefined = 1;
constexpr int kExitUsage = 2;

int usage_error(const std::string& what) {
    std::cerr << "error: " << what << "\n";
    return kExitUsage;
}

struct CombineArgs {
    std::string input;
    std::string method = "virtual-sampling";
    double sigma_scale = 1.0;
    std::string format = "json";
    bool diagnostics = false;
};

struct CompareArgs {
    std::string input;
    double sigma_scale = 1.0;
    std::string format = "json";
};

struct AuditArgs {
    std::string method = "virtual-sampling";
    std::vector<std::string> desiderata;
    fuse::AuditConfig cfg;
    std::string format = "json";
};

int run_combine(const CombineArgs& args) {
    const auto method = fuse::parse_method(args.method);
    if (!method) return usage_error("unknown method '" + args.method + "'");
    const auto format = fuse::parse_format(args.format);
    if (!format) return usage_error("unknown format '" + args.format + "'");

    const fuse::CalibrationPolicy policy{args.sigma_scale};
    const auto sources = fuse::read_estimates_from(args.input);
    const fuse::MethodOutcome outcome = fuse::evaluate_method(*method, sources, policy);

    fuse::VirtualSamplingDiagnostics diag;
    const fuse::VirtualSamplingDiagnostics* diag_ptr = nullptr;
    if (args.diagnostics && *method == fuse::Method::VirtualSampling && outcome.defined) {
        diag = fuse::combine_virtual_sampling(sources, policy).second;
        diag_ptr = &diag;
    }
    std::cout << fuse::render_combine(*method, outcome, diag_ptr, sources, *format);
    return outcome.defined ? kExitOk : kExitUndefined;
}

int run_compare(const CompareArgs& args) {
    const auto format = fuse::parse_format(args.format);
    if (!format) return usage_error("unknown format '" + args.format + "'");

    const fuse::CalibrationPolicy policy{args.sigma_scale};
    const auto sources = fuse::read_estimates_from(args.input);

    std::vector<std::pair<fuse::Method, fuse::MethodOutcome>> rows;
    for (fuse::Method m : {fuse::Method::VirtualSampling, fuse::Method::WeightedMean,
                           fuse::Method::UnweightedMean, fuse::Method::Intersect,
                           fuse::Method::Cover})
        rows.emplace_back(m, fuse::evaluate_method(m, sources, policy));

    std::cout << fuse::render_compare(rows, sources.size(), *format);
    return kExitOk;  // undefined resultants are rows, not failures
}

int run_audit(const AuditArgs& args) {
    const auto method = fuse::parse_method(args.method);
    if (!method) return usage_error("unknown method '" + args.method + "'");
    const auto format = fuse::parse_format(args.format);
    if (!format) return usage_error("unknown format '" + args.format + "'");

    std::vector<fuse::DesideratumId> ids;
    bool all = args.desiderata.empty();
    for (const auto& name : args.desiderata) {
        if (name == "all") {
            all = true;
            continue;
        }
        const auto id = fuse::parse_desideratum(name);
        if (!id) return usage_error("unknown desideratum '" + name + "' (use D1..D10 or 'all')");
        if (std::find(ids.begin(), ids.end(), *id) == ids.end()) ids.push_back(*id);
    }
    if (all) ids.assign(std::begin(fuse::kAllDesiderata), std::end(fuse::kAllDesiderata));

    std::vector<fuse::DesideratumReport> reports;
    reports.reserve(ids.size());
    for (const auto id : ids) reports.push_back(fuse::run_desideratum(id, *method, args.cfg));

    std::cout << fuse::render_audit(reports, *method, args.cfg, *format);
    for (const auto& r : reports)
        if (r.verdict == fuse::Verdict::Fail) return kExitUndefined;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combine uncertain estimates and audit combination methods"};
    app.require_subcommand(1);

    CombineArgs combine_args;
    auto* combine = app.add_subcommand("combine", "Combine estimates into one resultant");
    combine->add_option("input", combine_args.input,
                        "CSV or line-delimited JSON file; '-' reads standard input")
        ->required();
    combine->add_option("--method", combine_args.method,
                        "virtual-sampling|weighted-mean|unweighted-mean|intersect|cover")
        ->capture_default_str();
    combine->add_option("--sigma-scale", combine_args.sigma_scale,
                        "calibration factor applied to input uncertainties")
        ->capture_default_str();
    combine->add_option("--format", combine_args.format, "json|table")->capture_default_str();
    combine->add_flag("--diagnostics", combine_args.diagnostics,
                      "include the virtual-sampling diagnostics block");

    CompareArgs compare_args;
    auto* compare = app.add_subcommand("compare", "Run every method on the same input");
    compare->add_option("input", compare_args.input,
                        "CSV or line-delimited JSON file; '-' reads standard input")
        ->required();
    compare->add_option("--sigma-scale", compare_args.sigma_scale,
                        "calibration factor applied to input uncertainties")
        ->capture_default_str();
    compare->add_option("--format", compare_args.format, "json|table")->capture_default_str();

    AuditArgs audit_args;
    auto* audit = app.add_subcommand("audit", "Property-check desiderata against a method");
    audit->add_option("--method", audit_args.method,
                      "virtual-sampling|weighted-mean|unweighted-mean|intersect|cover")
        ->capture_default_str();
    audit->add_option("--desideratum", audit_args.desiderata,
                      "desideratum id (D1..D10), repeatable, or 'all' (default)");
    audit->add_option("--cases", audit_args.cfg.cases, "generated cases per desideratum")
        ->capture_default_str();
    audit->add_option("--seed", audit_args.cfg.seed, "audit seed")
        ->envname("FUSE_SEED")
        ->capture_default_str();
    audit->add_option("--tolerance", audit_args.cfg.tolerance, "comparison tolerance")
        ->capture_default_str();
    audit->add_flag("--weak", audit_args.cfg.weak,
                    "check weak forms (no worsening) instead of strict improvement");
    audit->add_option("--format", audit_args.format, "json|table")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (combine->parsed()) return run_combine(combine_args);
        if (compare->parsed()) return run_compare(compare_args);
        if (audit->parsed()) return run_audit(audit_args);
    } catch (const fuse::ParseError& e) {
        return usage_error(e.what());
    } catch (const std::invalid_argument& e) {
        return usage_error(e.what());
    }
    return kExitUsage;
}
