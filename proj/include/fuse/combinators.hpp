// The combination rules: virtual sampling (with full diagnostics),
// inverse-variance weighted mean, unweighted mean, interval intersection and
// interval cover. All are pure functions of their inputs.
#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fuse/estimates.hpp"

namespace fuse {

// Raised when a combinator has no defined resultant. The what() string is
// the structured reason reported by the CLI.
class CombineError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NoInformativeSources : public CombineError {
  public:
    NoInformativeSources() : CombineError("no informative sources") {}
};

class EmptyIntersection : public CombineError {
  public:
    EmptyIntersection() : CombineError("empty intersection") {}
};

class InfiniteCover : public CombineError {
  public:
    InfiniteCover() : CombineError("infinite cover") {}
};

// Intermediates of the virtual-sampling chain, kept per input source.
// Sources excluded by utter uncertainty or by the zero-variance rule carry
// sample size 0 and contribute to none of the aggregates; their u entry is
// still reported for inspection.
struct VirtualSamplingDiagnostics {
    double v_star = 0.0;               // minimum informative source variance
    std::vector<double> sample_sizes;  // n_i in [0,1], at least one equal to 1
    double n = 0.0;                    // sum of sample sizes, >= 1
    std::vector<double> u_values;      // v_star + (m_i - m)^2 per source
    double u_bar = 0.0;                // sample-size-weighted mean of u_i
    double between_variance = 0.0;     // weighted variance of source values
    double v = 0.0;                    // resultant variance, u_bar / n
};

// The virtual-sampling rule. Each source is read as a distribution of
// sample means: the common underlying variance is the smallest calibrated
// source variance, and a source's virtual sample size is that minimum
// divided by its own variance, so higher certainty means a larger sample.
// The resultant value is the sample-size-weighted mean; the resultant
// variance is the weighted expected squared distance to that mean, divided
// by the total sample size. The resultant uncertainty is reported on the
// input scale (square root, then inverse calibration).
//
// Sources with infinite uncertainty get sample size 0 and no influence.
// If any source has zero variance, every zero-variance source gets sample
// size 1 and every positive-variance source gets 0.
//
// Throws NoInformativeSources when no source has finite uncertainty.
std::pair<CombinedEstimate, VirtualSamplingDiagnostics> combine_virtual_sampling(
    std::span<const SourceEstimate> estimates, const CalibrationPolicy& p = {});

// Classical inverse-variance pooling: value = sum(m_i/v_i)/sum(1/v_i),
// uncertainty = sqrt(1/sum(1/v_i)) mapped back to the input scale. A
// baseline: its uncertainty ignores disagreement entirely. Zero-variance
// sources take all the weight, split equally; infinite uncertainty gets
// weight zero. Throws NoInformativeSources as above.
CombinedEstimate combine_weighted_mean(std::span<const SourceEstimate> estimates,
                                       const CalibrationPolicy& p = {});

// The naive baseline: plain mean of the values, plain mean of the finite
// uncertainties (+inf when there are none). Ignores certainty levels, which
// is exactly the failure the audit harness demonstrates. Throws
// NoInformativeSources on empty input.
CombinedEstimate combine_unweighted_mean(std::span<const SourceEstimate> estimates);

// Intersection of the source intervals: greatest lower bound becomes the
// resultant lower bound, least upper bound the upper. Throws
// EmptyIntersection when they do not all share a point. If every source
// interval is infinite the resultant is the whole line, reported with the
// mean midpoint.
Interval combine_intersection(std::span<const Interval> intervals);

// Smallest interval containing every source interval. Throws InfiniteCover
// when any source half-length is infinite.
Interval combine_cover(std::span<const Interval> intervals);

// Splits u_bar into its two exact parts: the common source variance and the
// weighted variance of source values (the disagreement term).
std::pair<double, double> decompose(const VirtualSamplingDiagnostics& d);

// Outcome of running any method on a shared input list; interval methods
// see the estimates through to_interval and report back through the inverse
// calibration. Undefined resultants carry their reason instead of throwing.
struct MethodOutcome {
    bool defined = false;
    CombinedEstimate estimate;
    std::string reason;  // set when !defined
};

MethodOutcome evaluate_method(Method method, std::span<const SourceEstimate> estimates,
                              const CalibrationPolicy& p = {});

}  // namespace fuse
