// Executable encodings of the ten desiderata (D1 Range .. D10 Sufficiency)
// as randomized property checks. Each desideratum has a scenario generator
// that enforces its preconditions exactly; the checker then tests the
// stated inequality against any combination method, recording
// counterexamples for failures and skipping cases where the method's
// resultant is undefined.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fuse/combinators.hpp"
#include "fuse/estimates.hpp"

namespace fuse {

enum class DesideratumId { D1, D2, D3, D4, D5, D6, D7, D8, D9, D10 };

inline constexpr DesideratumId kAllDesiderata[] = {
    DesideratumId::D1, DesideratumId::D2, DesideratumId::D3, DesideratumId::D4,
    DesideratumId::D5, DesideratumId::D6, DesideratumId::D7, DesideratumId::D8,
    DesideratumId::D9, DesideratumId::D10,
};

const char* desideratum_code(DesideratumId id);  // "D1" .. "D10"
const char* desideratum_name(DesideratumId id);  // "Range" .. "Sufficiency"
std::optional<DesideratumId> parse_desideratum(const std::string& code);

struct AuditConfig {
    std::uint64_t seed = 42;
    int cases = 1000;
    double tolerance = 1e-9;  // strict-inequality margin and continuity floor
    int min_sources = 2;
    int max_sources = 6;
    // Weak-form checking: strict improvement relaxed to "or else remains
    // unchanged". Strict checks require improvement > tolerance; weak
    // checks require no worsening beyond tolerance.
    bool weak = false;
};

void validate(const AuditConfig& cfg);

// One generated case: a base estimate list plus one or more perturbed
// lists (a single perturbation for most desiderata, a ladder for the
// limit-style ones). The extra fields carry the per-desideratum metadata
// the checker needs.
struct Scenario {
    std::vector<SourceEstimate> base;
    std::vector<std::vector<SourceEstimate>> perturbed;

    enum class Field { None, Value, Uncertainty };
    int changed_index = -1;       // D2/D4/D6: which source was perturbed
    Field changed_field = Field::None;
    std::vector<double> ladder;   // D5: appended uncertainties; D6: epsilons;
                                  // D10: nested draw sizes
    double levels[2] = {0, 0};    // D10: the two uncertainty levels
};

// Draws a scenario satisfying the desideratum's preconditions. D7 and D9
// scenarios self-check that the virtual-sampling resultant value is
// preserved to 1e-12 and throw std::logic_error otherwise.
Scenario generate_scenario(DesideratumId id, std::mt19937_64& rng, const AuditConfig& cfg);

struct MethodResult {
    bool defined = false;
    double value = 0.0;
    double uncertainty = 0.0;
    std::string reason;
};

struct Counterexample {
    int case_index = -1;
    std::vector<SourceEstimate> base;
    std::vector<SourceEstimate> perturbed;  // empty for single-input checks
    MethodResult base_outcome;
    MethodResult perturbed_outcome;
    std::string violated;  // the inequality that failed, human-readable
};

enum class Verdict { Pass, Fail, NotApplicable };

struct DesideratumReport {
    DesideratumId id = DesideratumId::D1;
    Method method = Method::VirtualSampling;
    int cases_requested = 0;
    int cases_run = 0;  // cases where the check applied (defined outputs,
                        // preconditions met)
    std::vector<Counterexample> violations;
    Verdict verdict = Verdict::NotApplicable;
};

// Runs cfg.cases generated scenarios of the desideratum against the method.
// verdict == Pass iff no violations and at least one applicable case.
// Per-case RNG streams derive from (seed, case index), so reports are
// bit-identical across runs for a fixed configuration.
DesideratumReport run_desideratum(DesideratumId id, Method method, const AuditConfig& cfg);

}  // namespace fuse
