#include "fuse/desiderata.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>

#include "fuse/random.hpp"

namespace fuse {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double draw_value(std::mt19937_64& rng) { return uniform_real(rng, -5.0, 5.0); }
double draw_uncertainty(std::mt19937_64& rng) { return log_uniform(rng, 0.2, 2.5); }

int draw_count(std::mt19937_64& rng, const AuditConfig& cfg) {
    return uniform_int(rng, std::max(2, cfg.min_sources), cfg.max_sources);
}

std::vector<SourceEstimate> draw_sources(std::mt19937_64& rng, int count) {
    std::vector<SourceEstimate> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back({draw_value(rng), draw_uncertainty(rng), ""});
    return out;
}

MethodResult evaluate(Method method, std::span<const SourceEstimate> estimates) {
    const MethodOutcome out = evaluate_method(method, estimates);
    MethodResult r;
    r.defined = out.defined;
    r.value = out.estimate.value;
    r.uncertainty = out.estimate.uncertainty;
    r.reason = out.reason;
    return r;
}

double resultant_value(std::span<const SourceEstimate> estimates) {
    return combine_virtual_sampling(estimates).first.value;
}

// Asserts the perturbation left the virtual-sampling resultant value intact.
// Generator bugs, not data, are the only way to trip this.
void self_check_value_preserved(const Scenario& sc) {
    const double base = resultant_value(sc.base);
    for (const auto& pert : sc.perturbed) {
        const double moved = std::fabs(resultant_value(pert) - base);
        if (!(moved <= 1e-12 * std::max(1.0, std::fabs(base))))
            throw std::logic_error("scenario generator failed to preserve the resultant value");
    }
}

void append_balanced_pair(std::vector<SourceEstimate>& dst, double center, double spread,
                          double uncertainty) {
    dst.push_back({center - spread, uncertainty, ""});
    dst.push_back({center + spread, uncertainty, ""});
}

Scenario gen_range(std::mt19937_64& rng, const AuditConfig& cfg) {
    Scenario sc;
    sc.base = draw_sources(rng, draw_count(rng, cfg));
    return sc;
}

Scenario gen_monotonicity(std::mt19937_64& rng, const AuditConfig& cfg) {
    Scenario sc;
    sc.base = draw_sources(rng, draw_count(rng, cfg));
    sc.changed_index = uniform_int(rng, 0, static_cast<int>(sc.base.size()) - 1);
    sc.changed_field = Scenario::Field::Value;
    sc.perturbed.push_back(sc.base);
    sc.perturbed[0][static_cast<std::size_t>(sc.changed_index)].value += uniform_real(rng, 0.5, 2.0);
    return sc;
}

Scenario gen_symmetry(std::mt19937_64& rng, const AuditConfig&) {
    Scenario sc;
    double v1 = draw_value(rng);
    double v2 = draw_value(rng);
    while (std::fabs(v2 - v1) < 0.1) v2 = draw_value(rng);
    const double s = draw_uncertainty(rng);
    sc.base = {{v1, s, ""}, {v2, s, ""}};
    return sc;
}

Scenario gen_certainty(std::mt19937_64& rng, const AuditConfig& cfg) {
    Scenario sc;
    // Needs a source whose value clearly differs from the resultant, so that
    // "pulls the resultant toward it" is a measurable claim.
    int picked = -1;
    for (int attempt = 0; attempt < 100 && picked < 0; ++attempt) {
        sc.base = draw_sources(rng, draw_count(rng, cfg));
        const double m = resultant_value(sc.base);
        double best = 0.0;
        for (std::size_t j = 0; j < sc.base.size(); ++j) {
            const double gap = std::fabs(sc.base[j].value - m);
            if (gap > best) {
                best = gap;
                if (gap >= 0.05) picked = static_cast<int>(j);
            }
        }
    }
    if (picked < 0) throw std::logic_error("failed to draw a certainty scenario");
    sc.changed_index = picked;
    sc.changed_field = Scenario::Field::Uncertainty;
    sc.perturbed.push_back(sc.base);
    sc.perturbed[0][static_cast<std::size_t>(picked)].uncertainty *= uniform_real(rng, 0.3, 0.8);
    return sc;
}

Scenario gen_ignorance(std::mt19937_64& rng, const AuditConfig& cfg) {
    Scenario sc;
    sc.base = draw_sources(rng, draw_count(rng, cfg));
    const double appended = draw_value(rng);
    sc.ladder = {kInfinity, 1e2, 1e4, 1e6};
    for (double u : sc.ladder) {
        sc.perturbed.push_back(sc.base);
        sc.perturbed.back().push_back({appended, u, ""});
    }
    sc.changed_index = static_cast<int>(sc.base.size());
    sc.changed_field = Scenario::Field::Uncertainty;
    return sc;
}

Scenario gen_continuity(std::mt19937_64& rng, const AuditConfig& cfg) {
    Scenario sc;
    sc.base = draw_sources(rng, draw_count(rng, cfg));
    sc.changed_index = uniform_int(rng, 0, static_cast<int>(sc.base.size()) - 1);
    sc.changed_field = uniform_int(rng, 0, 1) == 0 ? Scenario::Field::Value
                                                   : Scenario::Field::Uncertainty;
    const double sign = uniform_int(rng, 0, 1) == 0 ? 1.0 : -1.0;
    sc.ladder = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
    for (double eps : sc.ladder) {
        sc.perturbed.push_back(sc.base);
        auto& target = sc.perturbed.back()[static_cast<std::size_t>(sc.changed_index)];
        if (sc.changed_field == Scenario::Field::Value)
            target.value += sign * eps;
        else
            target.uncertainty += sign * eps;  // uncertainties start >= 0.2, stay positive
    }
    return sc;
}

Scenario gen_composition(std::mt19937_64& rng, const AuditConfig&) {
    Scenario sc;
    const double center = uniform_real(rng, -3.0, 3.0);
    const double spread = uniform_real(rng, 0.5, 3.0);
    const double pair_u = log_uniform(rng, 0.5, 2.0);
    append_balanced_pair(sc.base, center, spread, pair_u);
    if (uniform_int(rng, 0, 1) == 1) {
        // Companion pairs sit strictly wider, and the first one is strictly
        // more certain than the perturbed pair, so the perturbed pair never
        // holds the smallest variance.
        append_balanced_pair(sc.base, center, spread * uniform_real(rng, 1.15, 3.0),
                             pair_u * uniform_real(rng, 0.35, 0.85));
        if (uniform_int(rng, 0, 1) == 1)
            append_balanced_pair(sc.base, center, spread * uniform_real(rng, 1.15, 3.0),
                                 log_uniform(rng, 0.2, 2.5));
    }
    const double grow = uniform_real(rng, 1.3, 2.5);
    sc.perturbed.push_back(sc.base);
    sc.perturbed[0][0].uncertainty = pair_u * grow;
    sc.perturbed[0][1].uncertainty = pair_u * grow;
    self_check_value_preserved(sc);
    return sc;
}

Scenario gen_support(std::mt19937_64& rng, const AuditConfig& cfg) {
    Scenario sc;
    const double value = draw_value(rng);
    const int count = draw_count(rng, cfg);
    const bool certain = uniform_real(rng, 0.0, 1.0) < 0.05;
    for (int i = 0; i < count; ++i)
        sc.base.push_back({value, certain ? 0.0 : draw_uncertainty(rng), ""});
    double appended_u;
    if (certain)
        appended_u = uniform_int(rng, 0, 1) == 0 ? 0.0 : draw_uncertainty(rng);
    else
        appended_u = draw_uncertainty(rng);
    sc.perturbed.push_back(sc.base);
    sc.perturbed[0].push_back({value, appended_u, ""});
    sc.changed_index = count;
    sc.changed_field = Scenario::Field::Uncertainty;
    return sc;
}

Scenario gen_resolution(std::mt19937_64& rng, const AuditConfig&) {
    Scenario sc;
    const double center = uniform_real(rng, -3.0, 3.0);
    const double spread = uniform_real(rng, 0.5, 3.0);
    // Uncertainty at least 1.1x the spread keeps every method applicable,
    // interval intersection included.
    const double u = spread * uniform_real(rng, 1.1, 2.5);
    append_balanced_pair(sc.base, center, spread, u);
    sc.perturbed.emplace_back();
    append_balanced_pair(sc.perturbed[0], center, spread * uniform_real(rng, 0.3, 0.8), u);
    self_check_value_preserved(sc);
    return sc;
}

Scenario gen_sufficiency(std::mt19937_64& rng, const AuditConfig&) {
    Scenario sc;
    // A shared value population read at two calibration levels; nested
    // prefixes of one shuffled draw order stand in for growing samples.
    std::vector<double> population(200);
    for (double& x : population) x = uniform_real(rng, -0.4, 0.4);
    std::shuffle(population.begin(), population.end(), rng);

    const double low = log_uniform(rng, 0.5, 3.0);
    const double high = low * uniform_real(rng, 1.3, 2.2);
    sc.levels[0] = low;
    sc.levels[1] = high;
    sc.ladder = {5, 10, 20, 40, 80};

    const int largest = static_cast<int>(sc.ladder.back());
    sc.perturbed.emplace_back();
    for (int i = 0; i < largest; ++i) {
        sc.base.push_back({population[static_cast<std::size_t>(i)], low, ""});
        sc.perturbed[0].push_back({population[static_cast<std::size_t>(i)], high, ""});
    }
    return sc;
}

struct CaseOutcome {
    enum class Status { Pass, Violation, NotApplicable };
    Status status = Status::Pass;
    int rung = -1;  // index into scenario.perturbed for the failing list
    MethodResult base_outcome;
    MethodResult perturbed_outcome;
    std::string violated;
};

CaseOutcome not_applicable() {
    CaseOutcome out;
    out.status = CaseOutcome::Status::NotApplicable;
    return out;
}

CaseOutcome violation(int rung, const MethodResult& base, const MethodResult& pert,
                      std::string what) {
    CaseOutcome out;
    out.status = CaseOutcome::Status::Violation;
    out.rung = rung;
    out.base_outcome = base;
    out.perturbed_outcome = pert;
    out.violated = std::move(what);
    return out;
}

double output_shift(const MethodResult& a, const MethodResult& b) {
    const double dv = std::fabs(b.value - a.value);
    double du;
    if (std::isinf(a.uncertainty) && std::isinf(b.uncertainty))
        du = 0.0;
    else
        du = std::fabs(b.uncertainty - a.uncertainty);
    return std::max(dv, du);
}

// The perturbation must not have moved the resultant value for uncertainty
// comparisons to be meaningful.
bool value_preserved(const MethodResult& base, const MethodResult& pert) {
    return std::fabs(pert.value - base.value) <= 1e-9 * std::max(1.0, std::fabs(base.value));
}

CaseOutcome check_range(Method method, const AuditConfig& cfg, const Scenario& sc) {
    const MethodResult r = evaluate(method, sc.base);
    if (!r.defined) return not_applicable();
    double lo = sc.base[0].value, hi = sc.base[0].value;
    for (const auto& e : sc.base) {
        lo = std::min(lo, e.value);
        hi = std::max(hi, e.value);
    }
    if (r.value < lo - cfg.tolerance || r.value > hi + cfg.tolerance)
        return violation(-1, r, {},
                         "resultant value " + num(r.value) + " outside the input value range [" +
                             num(lo) + ", " + num(hi) + "]");
    return {};
}

CaseOutcome check_monotonicity(Method method, const AuditConfig& cfg, const Scenario& sc) {
    const MethodResult base = evaluate(method, sc.base);
    const MethodResult pert = evaluate(method, sc.perturbed[0]);
    if (!base.defined || !pert.defined) return not_applicable();
    if (cfg.weak) {
        if (pert.value < base.value - cfg.tolerance)
            return violation(0, base, pert,
                             "raising one input value lowered the resultant value from " +
                                 num(base.value) + " to " + num(pert.value));
    } else if (!(pert.value > base.value + cfg.tolerance)) {
        return violation(0, base, pert,
                         "raising one input value did not raise the resultant value (" +
                             num(base.value) + " -> " + num(pert.value) + ")");
    }
    return {};
}

CaseOutcome check_symmetry(Method method, const AuditConfig& cfg, const Scenario& sc) {
    const MethodResult r = evaluate(method, sc.base);
    if (!r.defined) return not_applicable();
    const double d1 = std::fabs(r.value - sc.base[0].value);
    const double d2 = std::fabs(r.value - sc.base[1].value);
    if (std::fabs(d1 - d2) > cfg.tolerance)
        return violation(-1, r, {},
                         "two equally uncertain sources sit at distances " + num(d1) + " and " +
                             num(d2) + " from the resultant");
    return {};
}

CaseOutcome check_certainty(Method method, const AuditConfig& cfg, const Scenario& sc) {
    const MethodResult base = evaluate(method, sc.base);
    const MethodResult pert = evaluate(method, sc.perturbed[0]);
    if (!base.defined || !pert.defined) return not_applicable();
    const double target = sc.base[static_cast<std::size_t>(sc.changed_index)].value;
    // The claim is vacuous when the resultant already sits on the source.
    if (std::fabs(target - base.value) <= 1e-3) return not_applicable();
    const double before = std::fabs(base.value - target);
    const double after = std::fabs(pert.value - target);
    if (cfg.weak) {
        if (after > before + cfg.tolerance)
            return violation(0, base, pert,
                             "making a source more certain pushed the resultant away from it (" +
                                 num(before) + " -> " + num(after) + ")");
    } else if (!(after < before - cfg.tolerance)) {
        return violation(0, base, pert,
                         "making a source more certain did not pull the resultant toward it (" +
                             num(before) + " -> " + num(after) + ")");
    }
    return {};
}

CaseOutcome check_ignorance(Method method, const AuditConfig& cfg, const Scenario& sc) {
    const MethodResult base = evaluate(method, sc.base);
    if (!base.defined) return not_applicable();

    const MethodResult exact = evaluate(method, sc.perturbed[0]);
    if (!exact.defined)
        return violation(0, base, exact,
                         "appending an utterly uncertain source made the resultant undefined: " +
                             exact.reason);
    if (output_shift(base, exact) > cfg.tolerance)
        return violation(0, base, exact,
                         "appending an utterly uncertain source moved the resultant by " +
                             num(output_shift(base, exact)));

    double prev = kInfinity;
    MethodResult last;
    for (std::size_t k = 1; k < sc.perturbed.size(); ++k) {
        const MethodResult r = evaluate(method, sc.perturbed[k]);
        const int rung = static_cast<int>(k);
        if (!r.defined)
            return violation(rung, base, r,
                             "appending a source with uncertainty " + num(sc.ladder[k]) +
                                 " made the resultant undefined: " + r.reason);
        const double effect = output_shift(base, r);
        if (effect > prev + cfg.tolerance)
            return violation(rung, base, r,
                             "the effect of an appended source grew from " + num(prev) + " to " +
                                 num(effect) + " as its uncertainty rose to " + num(sc.ladder[k]));
        prev = effect;
        last = r;
    }
    if (prev > cfg.tolerance)
        return violation(static_cast<int>(sc.perturbed.size()) - 1, base, last,
                         "a nearly ignorant appended source still moves the resultant by " +
                             num(prev));
    return {};
}

CaseOutcome check_continuity(Method method, const AuditConfig& cfg, const Scenario& sc) {
    const MethodResult base = evaluate(method, sc.base);
    if (!base.defined) return not_applicable();

    double eps_first = 0.0, shift_first = 0.0;
    bool have_first = false;
    MethodResult last_result;
    double shift_last = 0.0;
    bool last_defined = false;
    for (std::size_t k = 0; k < sc.perturbed.size(); ++k) {
        const MethodResult r = evaluate(method, sc.perturbed[k]);
        if (!r.defined) {
            last_defined = false;
            continue;
        }
        const double shift = output_shift(base, r);
        if (!have_first) {
            eps_first = sc.ladder[k];
            shift_first = shift;
            have_first = true;
        }
        last_result = r;
        shift_last = shift;
        last_defined = true;
    }
    // Undefined rungs mean the perturbation crossed a definedness boundary;
    // the limit claim needs the smallest step to land on the defined side.
    if (!have_first || !last_defined) return not_applicable();

    const double ratio = sc.ladder.back() / eps_first;
    const double allowed = std::max(cfg.tolerance, 10.0 * shift_first * ratio);
    if (shift_last > allowed)
        return violation(static_cast<int>(sc.perturbed.size()) - 1, base, last_result,
                         "a perturbation of " + num(sc.ladder.back()) +
                             " still moves the resultant by " + num(shift_last) +
                             " (allowed " + num(allowed) + ")");
    return {};
}

CaseOutcome check_composition(Method method, const AuditConfig& cfg, const Scenario& sc) {
    const MethodResult base = evaluate(method, sc.base);
    const MethodResult pert = evaluate(method, sc.perturbed[0]);
    if (!base.defined || !pert.defined) return not_applicable();
    if (!value_preserved(base, pert)) return not_applicable();
    if (cfg.weak) {
        if (pert.uncertainty < base.uncertainty - cfg.tolerance)
            return violation(0, base, pert,
                             "raising the uncertainty of an agreeing pair lowered the resultant "
                             "uncertainty from " +
                                 num(base.uncertainty) + " to " + num(pert.uncertainty));
    } else if (!(pert.uncertainty > base.uncertainty + cfg.tolerance)) {
        return violation(0, base, pert,
                         "raising the uncertainty of an agreeing pair did not raise the resultant "
                         "uncertainty (" +
                             num(base.uncertainty) + " -> " + num(pert.uncertainty) + ")");
    }
    return {};
}

CaseOutcome check_support(Method method, const AuditConfig& cfg, const Scenario& sc) {
    const MethodResult base = evaluate(method, sc.base);
    const MethodResult pert = evaluate(method, sc.perturbed[0]);
    if (!base.defined || !pert.defined) return not_applicable();
    if (base.uncertainty <= cfg.tolerance) {
        // Already as certain as it gets; corroboration must not break that.
        if (std::fabs(pert.uncertainty - base.uncertainty) > cfg.tolerance)
            return violation(0, base, pert,
                             "an agreeing source changed an already certain resultant (" +
                                 num(base.uncertainty) + " -> " + num(pert.uncertainty) + ")");
        return {};
    }
    if (cfg.weak) {
        if (pert.uncertainty > base.uncertainty + cfg.tolerance)
            return violation(0, base, pert,
                             "an agreeing source raised the resultant uncertainty from " +
                                 num(base.uncertainty) + " to " + num(pert.uncertainty));
    } else if (!(pert.uncertainty < base.uncertainty - cfg.tolerance)) {
        return violation(0, base, pert,
                         "an agreeing source did not lower the resultant uncertainty (" +
                             num(base.uncertainty) + " -> " + num(pert.uncertainty) + ")");
    }
    return {};
}

CaseOutcome check_resolution(Method method, const AuditConfig& cfg, const Scenario& sc) {
    const MethodResult base = evaluate(method, sc.base);
    const MethodResult pert = evaluate(method, sc.perturbed[0]);
    if (!base.defined || !pert.defined) return not_applicable();
    if (!value_preserved(base, pert)) return not_applicable();
    if (cfg.weak) {
        if (pert.uncertainty > base.uncertainty + cfg.tolerance)
            return violation(0, base, pert,
                             "moving sources closer together raised the resultant uncertainty "
                             "from " +
                                 num(base.uncertainty) + " to " + num(pert.uncertainty));
    } else if (!(pert.uncertainty < base.uncertainty - cfg.tolerance)) {
        return violation(0, base, pert,
                         "moving sources closer together did not lower the resultant uncertainty "
                         "(" +
                             num(base.uncertainty) + " -> " + num(pert.uncertainty) + ")");
    }
    return {};
}

CaseOutcome check_sufficiency(Method method, const AuditConfig& cfg, const Scenario& sc) {
    std::vector<double> gaps;
    MethodResult last_low, last_high;
    for (double size : sc.ladder) {
        const auto k = static_cast<std::size_t>(size);
        const MethodResult low =
            evaluate(method, std::span<const SourceEstimate>(sc.base).first(k));
        const MethodResult high =
            evaluate(method, std::span<const SourceEstimate>(sc.perturbed[0]).first(k));
        if (!low.defined || !high.defined) return not_applicable();
        gaps.push_back(std::fabs(high.uncertainty - low.uncertainty));
        last_low = low;
        last_high = high;
    }
    for (std::size_t j = 0; j + 1 < gaps.size(); ++j) {
        const bool ok = cfg.weak ? gaps[j + 1] <= gaps[j] + cfg.tolerance
                                 : gaps[j + 1] < gaps[j] - cfg.tolerance;
        if (!ok)
            return violation(0, last_low, last_high,
                             "the calibration gap did not shrink when the sample grew from " +
                                 num(sc.ladder[j]) + " to " + num(sc.ladder[j + 1]) + " sources (" +
                                 num(gaps[j]) + " -> " + num(gaps[j + 1]) + ")");
    }
    const double bound =
        std::fabs(sc.levels[1] - sc.levels[0]) / std::sqrt(sc.ladder.back()) + cfg.tolerance;
    if (!(gaps.back() < bound))
        return violation(0, last_low, last_high,
                         "the calibration gap " + num(gaps.back()) + " at " +
                             num(sc.ladder.back()) + " sources is not below " + num(bound));
    return {};
}

CaseOutcome check_case(DesideratumId id, Method method, const AuditConfig& cfg,
                       const Scenario& sc) {
    switch (id) {
        case DesideratumId::D1: return check_range(method, cfg, sc);
        case DesideratumId::D2: return check_monotonicity(method, cfg, sc);
        case DesideratumId::D3: return check_symmetry(method, cfg, sc);
        case DesideratumId::D4: return check_certainty(method, cfg, sc);
        case DesideratumId::D5: return check_ignorance(method, cfg, sc);
        case DesideratumId::D6: return check_continuity(method, cfg, sc);
        case DesideratumId::D7: return check_composition(method, cfg, sc);
        case DesideratumId::D8: return check_support(method, cfg, sc);
        case DesideratumId::D9: return check_resolution(method, cfg, sc);
        case DesideratumId::D10: return check_sufficiency(method, cfg, sc);
    }
    throw std::logic_error("unknown desideratum");
}

bool same_inputs(const std::vector<SourceEstimate>& a, const std::vector<SourceEstimate>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].value != b[i].value || a[i].uncertainty != b[i].uncertainty) return false;
    return true;
}

// One restore-toward-base pass over the perturbed coordinates. A candidate
// is kept only if the violation survives, so preconditions (which turn into
// NotApplicable) prune themselves. The perturbation must stay a real
// perturbation: a candidate identical to the base would make strict checks
// vacuously fail. Ladder scenarios are left alone; their perturbation is
// structural, not a handful of coordinates.
void shrink_violation(DesideratumId id, Method method, const AuditConfig& cfg, Scenario& sc) {
    if (sc.perturbed.size() != 1 || !sc.ladder.empty() ||
        sc.perturbed[0].size() != sc.base.size())
        return;
    for (std::size_t k = 0; k < sc.base.size(); ++k) {
        for (int field = 0; field < 2; ++field) {
            Scenario candidate = sc;
            auto& slot = candidate.perturbed[0][k];
            const auto& original = candidate.base[k];
            if (field == 0) {
                if (slot.value == original.value) continue;
                slot.value = original.value;
            } else {
                if (slot.uncertainty == original.uncertainty) continue;
                slot.uncertainty = original.uncertainty;
            }
            if (same_inputs(candidate.perturbed[0], candidate.base)) continue;
            if (check_case(id, method, cfg, candidate).status ==
                CaseOutcome::Status::Violation)
                sc = std::move(candidate);
        }
    }
}

}  // namespace

const char* desideratum_code(DesideratumId id) {
    switch (id) {
        case DesideratumId::D1: return "D1";
        case DesideratumId::D2: return "D2";
        case DesideratumId::D3: return "D3";
        case DesideratumId::D4: return "D4";
        case DesideratumId::D5: return "D5";
        case DesideratumId::D6: return "D6";
        case DesideratumId::D7: return "D7";
        case DesideratumId::D8: return "D8";
        case DesideratumId::D9: return "D9";
        case DesideratumId::D10: return "D10";
    }
    return "?";
}

const char* desideratum_name(DesideratumId id) {
    switch (id) {
        case DesideratumId::D1: return "Range";
        case DesideratumId::D2: return "Monotonicity";
        case DesideratumId::D3: return "Symmetry";
        case DesideratumId::D4: return "Certainty";
        case DesideratumId::D5: return "Ignorance";
        case DesideratumId::D6: return "Continuity";
        case DesideratumId::D7: return "Composition";
        case DesideratumId::D8: return "Support";
        case DesideratumId::D9: return "Resolution";
        case DesideratumId::D10: return "Sufficiency";
    }
    return "?";
}

std::optional<DesideratumId> parse_desideratum(const std::string& code) {
    std::string digits = code;
    if (!digits.empty() && (digits[0] == 'D' || digits[0] == 'd')) digits.erase(0, 1);
    if (digits.empty() || digits.size() > 2) return std::nullopt;
    for (char c : digits)
        if (c < '0' || c > '9') return std::nullopt;
    const int n = std::stoi(digits);
    if (n < 1 || n > 10) return std::nullopt;
    return kAllDesiderata[n - 1];
}

void validate(const AuditConfig& cfg) {
    if (cfg.cases < 1) throw std::invalid_argument("audit needs at least one case");
    if (!(cfg.tolerance > 0.0) || std::isinf(cfg.tolerance))
        throw std::invalid_argument("audit tolerance must be positive and finite");
    if (cfg.min_sources < 2) throw std::invalid_argument("audits need at least two sources");
    if (cfg.max_sources < cfg.min_sources)
        throw std::invalid_argument("source count range is empty");
    if (cfg.max_sources > 64) throw std::invalid_argument("source count cap is 64");
}

Scenario generate_scenario(DesideratumId id, std::mt19937_64& rng, const AuditConfig& cfg) {
    switch (id) {
        case DesideratumId::D1: return gen_range(rng, cfg);
        case DesideratumId::D2: return gen_monotonicity(rng, cfg);
        case DesideratumId::D3: return gen_symmetry(rng, cfg);
        case DesideratumId::D4: return gen_certainty(rng, cfg);
        case DesideratumId::D5: return gen_ignorance(rng, cfg);
        case DesideratumId::D6: return gen_continuity(rng, cfg);
        case DesideratumId::D7: return gen_composition(rng, cfg);
        case DesideratumId::D8: return gen_support(rng, cfg);
        case DesideratumId::D9: return gen_resolution(rng, cfg);
        case DesideratumId::D10: return gen_sufficiency(rng, cfg);
    }
    throw std::logic_error("unknown desideratum");
}

DesideratumReport run_desideratum(DesideratumId id, Method method, const AuditConfig& cfg) {
    validate(cfg);
    DesideratumReport report;
    report.id = id;
    report.method = method;
    report.cases_requested = cfg.cases;
    for (int i = 0; i < cfg.cases; ++i) {
        auto rng = case_rng(cfg.seed, static_cast<std::uint64_t>(i));
        Scenario sc = generate_scenario(id, rng, cfg);
        CaseOutcome outcome = check_case(id, method, cfg, sc);
        if (outcome.status == CaseOutcome::Status::NotApplicable) continue;
        ++report.cases_run;
        if (outcome.status != CaseOutcome::Status::Violation) continue;

        shrink_violation(id, method, cfg, sc);
        outcome = check_case(id, method, cfg, sc);

        Counterexample ce;
        ce.case_index = i;
        ce.base = sc.base;
        if (outcome.rung >= 0 && outcome.rung < static_cast<int>(sc.perturbed.size()))
            ce.perturbed = sc.perturbed[static_cast<std::size_t>(outcome.rung)];
        ce.base_outcome = outcome.base_outcome;
        ce.perturbed_outcome = outcome.perturbed_outcome;
        ce.violated = outcome.violated;
        report.violations.push_back(std::move(ce));
    }
    report.verdict = report.cases_run == 0
                         ? Verdict::NotApplicable
                         : (report.violations.empty() ? Verdict::Pass : Verdict::Fail);
    return report;
}

}  // namespace fuse
