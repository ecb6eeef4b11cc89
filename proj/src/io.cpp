#include "fuse/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>

#include "json.hpp"

namespace fuse {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool parse_double_strict(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    const char* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), last, out);
    return ec == std::errc() && ptr == last;
}

bool is_inf_token(std::string_view s) {
    if (s.size() != 3) return false;
    auto lower = [](char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : c; };
    return lower(s[0]) == 'i' && lower(s[1]) == 'n' && lower(s[2]) == 'f';
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

void push_validated(std::vector<SourceEstimate>& out, SourceEstimate e, std::size_t line_no) {
    try {
        validate(e);
    } catch (const std::invalid_argument& ex) {
        fail_line(line_no, ex.what());
    }
    out.push_back(std::move(e));
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

// Infinities are not valid JSON numbers; they travel as strings.
std::string json_number(double x) {
    if (!std::isfinite(x)) return "\"" + format_number(x) + "\"";
    return format_number(x);
}

std::string json_estimates(const std::vector<SourceEstimate>& list, const std::string& indent) {
    if (list.empty()) return "[]";
    std::string s = "[\n";
    for (std::size_t i = 0; i < list.size(); ++i) {
        s += indent + "  {\"value\": " + json_number(list[i].value) +
             ", \"uncertainty\": " + json_number(list[i].uncertainty) +
             ", \"label\": " + json_string(list[i].label) + "}";
        s += i + 1 < list.size() ? ",\n" : "\n";
    }
    s += indent + "]";
    return s;
}

std::string json_outcome(const MethodResult& r) {
    if (!r.defined) return "{\"status\": \"undefined\", \"reason\": " + json_string(r.reason) + "}";
    return "{\"status\": \"ok\", \"value\": " + json_number(r.value) +
           ", \"uncertainty\": " + json_number(r.uncertainty) + "}";
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() + 2 <= width)
        s.append(width - s.size(), ' ');
    else
        s.append(2, ' ');
    return s;
}

const char* verdict_tag(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

}  // namespace

std::vector<SourceEstimate> parse_csv(std::istream& in) {
    std::vector<SourceEstimate> out;
    std::string line;
    std::size_t line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view sv = trim(line);
        if (sv.empty()) continue;
        auto fields = split_fields(sv);
        for (auto& f : fields) f = trim(f);

        double value = 0.0;
        if (first_data_line) {
            first_data_line = false;
            if (!parse_double_strict(fields[0], value)) continue;  // header row
        }
        if (fields.size() < 2 || fields.size() > 3)
            fail_line(line_no, "expected value,uncertainty[,label]");
        if (!parse_double_strict(fields[0], value))
            fail_line(line_no, "bad value '" + std::string(fields[0]) + "'");
        double uncertainty = 0.0;
        if (is_inf_token(fields[1]))
            uncertainty = kInfinity;
        else if (!parse_double_strict(fields[1], uncertainty))
            fail_line(line_no, "bad uncertainty '" + std::string(fields[1]) + "'");

        SourceEstimate e{value, uncertainty,
                         fields.size() == 3 ? std::string(fields[2]) : std::string()};
        push_validated(out, std::move(e), line_no);
    }
    return out;
}

std::vector<SourceEstimate> parse_records(std::istream& in) {
    std::vector<SourceEstimate> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view sv = trim(line);
        if (sv.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(sv.begin(), sv.end());
        } catch (const nlohmann::json::exception& ex) {
            fail_line(line_no, ex.what());
        }
        if (!j.is_object()) fail_line(line_no, "expected one object per line");
        if (!j.contains("value") || !j["value"].is_number())
            fail_line(line_no, "field 'value' must be a number");
        if (!j.contains("uncertainty")) fail_line(line_no, "field 'uncertainty' is required");

        double uncertainty = 0.0;
        const auto& u = j["uncertainty"];
        if (u.is_number())
            uncertainty = u.get<double>();
        else if (u.is_string() && is_inf_token(u.get<std::string>()))
            uncertainty = kInfinity;
        else
            fail_line(line_no, "field 'uncertainty' must be a number or \"inf\"");

        std::string label;
        if (j.contains("label")) {
            if (!j["label"].is_string()) fail_line(line_no, "field 'label' must be a string");
            label = j["label"].get<std::string>();
        }
        push_validated(out, SourceEstimate{j["value"].get<double>(), uncertainty, label}, line_no);
    }
    return out;
}

std::vector<SourceEstimate> read_estimates(std::istream& in) {
    std::string buf(std::istreambuf_iterator<char>(in), {});
    std::size_t i = 0;
    while (i < buf.size() && (buf[i] == ' ' || buf[i] == '\t' || buf[i] == '\r' || buf[i] == '\n'))
        ++i;
    std::istringstream stream(buf);
    if (i < buf.size() && buf[i] == '{') return parse_records(stream);
    return parse_csv(stream);
}

std::vector<SourceEstimate> read_estimates_from(const std::string& path) {
    if (path == "-") return read_estimates(std::cin);
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open input file: " + path);
    return read_estimates(f);
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::optional<Method> parse_method(const std::string& name) {
    for (Method m : {Method::VirtualSampling, Method::WeightedMean, Method::UnweightedMean,
                     Method::Intersect, Method::Cover})
        if (name == method_tag(m)) return m;
    return std::nullopt;
}

std::optional<OutputFormat> parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "table") return OutputFormat::Table;
    return std::nullopt;
}

std::string render_combine(Method method, const MethodOutcome& outcome,
                           const VirtualSamplingDiagnostics* diagnostics,
                           std::span<const SourceEstimate> sources, OutputFormat format) {
    if (format == OutputFormat::Table) {
        std::string s;
        s += pad("method", 18) + method_tag(method) + "\n";
        if (!outcome.defined) {
            s += pad("status", 18) + "undefined\n";
            s += pad("reason", 18) + outcome.reason + "\n";
            return s;
        }
        s += pad("status", 18) + "ok\n";
        s += pad("value", 18) + format_number(outcome.estimate.value) + "\n";
        s += pad("uncertainty", 18) + format_number(outcome.estimate.uncertainty) + "\n";
        if (diagnostics) {
            s += pad("v_star", 18) + format_number(diagnostics->v_star) + "\n";
            for (std::size_t i = 0; i < diagnostics->sample_sizes.size(); ++i) {
                std::string key = "n_i[" + std::to_string(i) + "]";
                if (!sources[i].label.empty()) key += " (" + sources[i].label + ")";
                s += pad(std::move(key), 18) + format_number(diagnostics->sample_sizes[i]) + "\n";
            }
            s += pad("n", 18) + format_number(diagnostics->n) + "\n";
            s += pad("u_bar", 18) + format_number(diagnostics->u_bar) + "\n";
            s += pad("between_variance", 18) + format_number(diagnostics->between_variance) + "\n";
            s += pad("v", 18) + format_number(diagnostics->v) + "\n";
        }
        return s;
    }

    std::string s = "{\n";
    s += "  \"method\": " + json_string(method_tag(method)) + ",\n";
    if (!outcome.defined) {
        s += "  \"status\": \"undefined\",\n";
        s += "  \"reason\": " + json_string(outcome.reason) + "\n";
        s += "}\n";
        return s;
    }
    s += "  \"status\": \"ok\",\n";
    s += "  \"value\": " + json_number(outcome.estimate.value) + ",\n";
    s += "  \"uncertainty\": " + json_number(outcome.estimate.uncertainty);
    if (diagnostics) {
        s += ",\n  \"diagnostics\": {\n";
        s += "    \"v_star\": " + json_number(diagnostics->v_star) + ",\n";
        s += "    \"sample_sizes\": [\n";
        for (std::size_t i = 0; i < diagnostics->sample_sizes.size(); ++i) {
            s += "      {\"label\": " + json_string(sources[i].label) +
                 ", \"n_i\": " + json_number(diagnostics->sample_sizes[i]) + "}";
            s += i + 1 < diagnostics->sample_sizes.size() ? ",\n" : "\n";
        }
        s += "    ],\n";
        s += "    \"n\": " + json_number(diagnostics->n) + ",\n";
        s += "    \"u_bar\": " + json_number(diagnostics->u_bar) + ",\n";
        s += "    \"between_variance\": " + json_number(diagnostics->between_variance) + ",\n";
        s += "    \"v\": " + json_number(diagnostics->v) + "\n";
        s += "  }";
    }
    s += "\n}\n";
    return s;
}

std::string render_compare(std::span<const std::pair<Method, MethodOutcome>> rows,
                           std::size_t source_count, OutputFormat format) {
    if (format == OutputFormat::Table) {
        std::string s =
            pad("method", 19) + pad("status", 11) + pad("value", 27) + "uncertainty\n";
        for (const auto& [method, outcome] : rows) {
            s += pad(method_tag(method), 19);
            if (outcome.defined) {
                s += pad("ok", 11) + pad(format_number(outcome.estimate.value), 27) +
                     format_number(outcome.estimate.uncertainty) + "\n";
            } else {
                s += pad("undefined", 11) + outcome.reason + "\n";
            }
        }
        return s;
    }

    std::string s = "{\n";
    s += "  \"sources\": " + std::to_string(source_count) + ",\n";
    s += "  \"results\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& [method, outcome] = rows[i];
        s += "    {\n";
        s += "      \"method\": " + json_string(method_tag(method)) + ",\n";
        if (outcome.defined) {
            s += "      \"status\": \"ok\",\n";
            s += "      \"value\": " + json_number(outcome.estimate.value) + ",\n";
            s += "      \"uncertainty\": " + json_number(outcome.estimate.uncertainty) + "\n";
        } else {
            s += "      \"status\": \"undefined\",\n";
            s += "      \"reason\": " + json_string(outcome.reason) + "\n";
        }
        s += "    }";
        s += i + 1 < rows.size() ? ",\n" : "\n";
    }
    s += "  ]\n}\n";
    return s;
}

std::string render_audit(std::span<const DesideratumReport> reports, Method method,
                         const AuditConfig& cfg, OutputFormat format) {
    constexpr std::size_t kMaxInlineCounterexamples = 3;
    bool any_fail = false;
    for (const auto& r : reports) any_fail = any_fail || r.verdict == Verdict::Fail;

    if (format == OutputFormat::Table) {
        std::string s;
        s += pad("method", 11) + method_tag(method) + "\n";
        s += pad("seed", 11) + std::to_string(cfg.seed) + "\n";
        s += pad("cases", 11) + std::to_string(cfg.cases) + "\n";
        s += pad("tolerance", 11) + format_number(cfg.tolerance) + "\n";
        s += pad("weak", 11) + (cfg.weak ? "true" : "false") + "\n";
        s += "\n";
        s += pad("desideratum", 13) + pad("name", 14) + pad("verdict", 16) +
             pad("cases_run", 11) + "violations\n";
        for (const auto& r : reports) {
            s += pad(desideratum_code(r.id), 13) + pad(desideratum_name(r.id), 14) +
                 pad(verdict_tag(r.verdict), 16) + pad(std::to_string(r.cases_run), 11) +
                 std::to_string(r.violations.size()) + "\n";
            if (!r.violations.empty())
                s += "  counterexample: " + r.violations.front().violated + "\n";
        }
        s += pad("overall", 11) + (any_fail ? "fail" : "pass") + "\n";
        return s;
    }

    std::string s = "{\n";
    s += "  \"method\": " + json_string(method_tag(method)) + ",\n";
    s += "  \"seed\": " + std::to_string(cfg.seed) + ",\n";
    s += "  \"cases\": " + std::to_string(cfg.cases) + ",\n";
    s += "  \"tolerance\": " + json_number(cfg.tolerance) + ",\n";
    s += std::string("  \"weak\": ") + (cfg.weak ? "true" : "false") + ",\n";
    s += "  \"results\": [\n";
    for (std::size_t ri = 0; ri < reports.size(); ++ri) {
        const auto& r = reports[ri];
        s += "    {\n";
        s += "      \"desideratum\": " + json_string(desideratum_code(r.id)) + ",\n";
        s += "      \"name\": " + json_string(desideratum_name(r.id)) + ",\n";
        s += "      \"verdict\": " + json_string(verdict_tag(r.verdict)) + ",\n";
        s += "      \"cases_run\": " + std::to_string(r.cases_run) + ",\n";
        s += "      \"violations\": " + std::to_string(r.violations.size());
        if (!r.violations.empty()) {
            s += ",\n      \"counterexamples\": [\n";
            const std::size_t shown = std::min(kMaxInlineCounterexamples, r.violations.size());
            for (std::size_t ci = 0; ci < shown; ++ci) {
                const auto& ce = r.violations[ci];
                s += "        {\n";
                s += "          \"case_index\": " + std::to_string(ce.case_index) + ",\n";
                s += "          \"base\": " + json_estimates(ce.base, "          ") + ",\n";
                s += "          \"perturbed\": " + json_estimates(ce.perturbed, "          ") +
                     ",\n";
                s += "          \"base_outcome\": " + json_outcome(ce.base_outcome) + ",\n";
                s += "          \"perturbed_outcome\": " + json_outcome(ce.perturbed_outcome) +
                     ",\n";
                s += "          \"violated\": " + json_string(ce.violated) + "\n";
                s += "        }";
                s += ci + 1 < shown ? ",\n" : "\n";
            }
            s += "      ]";
        }
        s += "\n    }";
        s += ri + 1 < reports.size() ? ",\n" : "\n";
    }
    s += "  ],\n";
    s += std::string("  \"overall\": ") + (any_fail ? "\"fail\"" : "\"pass\"") + "\n";
    s += "}\n";
    return s;
}

}  // namespace fuse
