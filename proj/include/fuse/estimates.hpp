// Domain types for uncertain estimates: a source's value-and-uncertainty
// pair, the uncertainty -> standard-deviation calibration policy, and the
// symmetric interval representation used by the interval combinators.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fuse {

// One source's estimate of a parameter: a finite value plus a non-negative
// uncertainty in the same units. uncertainty == +inf encodes a source that
// professes no knowledge at all ("utter uncertainty").
struct SourceEstimate {
    double value = 0.0;
    double uncertainty = 0.0;
    std::string label;  // opaque, reporting only, never affects numerics
};

// Maps a reported uncertainty u to a standard deviation s = sigma_scale * u.
// The default treats uncertainties as standard deviations directly; e.g.
// sigma_scale = 1/1.96 reads them as 95% half-widths.
struct CalibrationPolicy {
    double sigma_scale = 1.0;  // > 0
};

// Symmetric interval stored as midpoint and half-length,
// covering [midpoint - half_length, midpoint + half_length].
struct Interval {
    double midpoint = 0.0;     // finite
    double half_length = 0.0;  // >= 0, +inf allowed

    double lower() const { return midpoint - half_length; }
    double upper() const { return midpoint + half_length; }
};

enum class Method {
    VirtualSampling,
    WeightedMean,
    UnweightedMean,
    Intersect,
    Cover,
};

// A resultant: the combined value and uncertainty the system adopts,
// tagged by the combinator that produced it.
struct CombinedEstimate {
    double value = 0.0;
    double uncertainty = 0.0;  // >= 0
    Method method = Method::VirtualSampling;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline void validate(const SourceEstimate& e) {
    if (!std::isfinite(e.value))
        throw std::invalid_argument("source value must be finite");
    if (std::isnan(e.uncertainty) || e.uncertainty < 0.0)
        throw std::invalid_argument("source uncertainty must be >= 0");
}

inline void validate(const CalibrationPolicy& p) {
    if (!(p.sigma_scale > 0.0) || !std::isfinite(p.sigma_scale))
        throw std::invalid_argument("sigma_scale must be a positive finite real");
}

// Standard deviation for one source under a calibration policy.
// +inf maps to +inf.
inline double calibrate(const SourceEstimate& e, const CalibrationPolicy& p) {
    return p.sigma_scale * e.uncertainty;
}

// Bridge from the value/uncertainty representation to the interval one:
// the calibrated uncertainty becomes the half-length.
inline Interval to_interval(const SourceEstimate& e, const CalibrationPolicy& p) {
    return Interval{e.value, calibrate(e, p)};
}

// Inverse bridge: midpoint and half-length read back as value and
// uncertainty. Callers decide how to treat an infinite half-length.
inline SourceEstimate from_interval(const Interval& i) {
    return SourceEstimate{i.midpoint, i.half_length, {}};
}

const char* method_tag(Method m);

}  // namespace fuse
