// Record ingestion (CSV and line-delimited JSON) and report rendering for
// the command-line tool. Rendering is byte-deterministic: fixed field
// order, no timestamps, numbers printed with 17 significant digits so
// binary64 values round-trip exactly.
#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fuse/combinators.hpp"
#include "fuse/desiderata.hpp"
#include "fuse/estimates.hpp"

namespace fuse {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CSV rows are value,uncertainty[,label]; a header row is skipped when the
// first field is not numeric. The uncertainty field accepts "inf" in any
// letter case. Decimal parsing is locale-independent ('.' radix point).
std::vector<SourceEstimate> parse_csv(std::istream& in);

// One JSON object per line: {"value": number, "uncertainty": number|"inf",
// "label": optional string}.
std::vector<SourceEstimate> parse_records(std::istream& in);

// Sniffs the format: input whose first non-blank character is '{' is
// line-delimited JSON, anything else is CSV.
std::vector<SourceEstimate> read_estimates(std::istream& in);

// Reads from the named file, or standard input when path is "-".
std::vector<SourceEstimate> read_estimates_from(const std::string& path);

// 17 significant digits; infinities render as "inf"/"-inf".
std::string format_number(double x);

// Inverse of method_tag.
std::optional<Method> parse_method(const std::string& name);

enum class OutputFormat { Json, Table };
std::optional<OutputFormat> parse_format(const std::string& name);

// Report for a single combination run. diagnostics must be null unless the
// method is virtual sampling and the outcome is defined.
std::string render_combine(Method method, const MethodOutcome& outcome,
                           const VirtualSamplingDiagnostics* diagnostics,
                           std::span<const SourceEstimate> sources, OutputFormat format);

// One row per method, fixed order.
std::string render_compare(std::span<const std::pair<Method, MethodOutcome>> rows,
                           std::size_t source_count, OutputFormat format);

// One block per desideratum; failing desiderata include their first
// counterexamples inline (capped, deterministic).
std::string render_audit(std::span<const DesideratumReport> reports, Method method,
                         const AuditConfig& cfg, OutputFormat format);

}  // namespace fuse
