#include "fuse/combinators.hpp"

#include <algorithm>
#include <cmath>

namespace fuse {

namespace {

void validate_all(std::span<const SourceEstimate> estimates) {
    for (const auto& e : estimates) validate(e);
}

std::vector<double> calibrated_variances(std::span<const SourceEstimate> estimates,
                                         const CalibrationPolicy& p) {
    std::vector<double> v;
    v.reserve(estimates.size());
    for (const auto& e : estimates) {
        const double s = calibrate(e, p);
        v.push_back(s * s);
    }
    return v;
}

}  // namespace

std::pair<CombinedEstimate, VirtualSamplingDiagnostics> combine_virtual_sampling(
    std::span<const SourceEstimate> estimates, const CalibrationPolicy& p) {
    validate(p);
    validate_all(estimates);

    const std::vector<double> variances = calibrated_variances(estimates, p);

    double v_star = kInfinity;
    for (double v : variances) v_star = std::min(v_star, v);
    if (!std::isfinite(v_star)) throw NoInformativeSources{};

    VirtualSamplingDiagnostics diag;
    diag.v_star = v_star;
    diag.sample_sizes.resize(estimates.size(), 0.0);
    for (size_t i = 0; i < estimates.size(); ++i) {
        const double vi = variances[i];
        if (!std::isfinite(vi)) continue;  // utterly uncertain, sample size 0
        // Zero-variance rule: certain sources get sample size 1 and the
        // rest drop out (the formula's literal value v*/v_i = 0).
        if (v_star == 0.0)
            diag.sample_sizes[i] = (vi == 0.0) ? 1.0 : 0.0;
        else
            diag.sample_sizes[i] = v_star / vi;
    }

    double n = 0.0;
    double weighted_values = 0.0;
    for (size_t i = 0; i < estimates.size(); ++i) {
        n += diag.sample_sizes[i];
        weighted_values += diag.sample_sizes[i] * estimates[i].value;
    }
    diag.n = n;
    const double m = weighted_values / n;

    // u_i = v* + (m_i - m)^2, the expected squared distance from source i's
    // distribution to the resultant mean. Averaging with the sample-size
    // weights gives u_bar; the squared-distance part alone is the
    // between-source variance.
    diag.u_values.resize(estimates.size(), 0.0);
    double weighted_u = 0.0;
    double weighted_sq_dist = 0.0;
    for (size_t i = 0; i < estimates.size(); ++i) {
        const double d = estimates[i].value - m;
        diag.u_values[i] = v_star + d * d;
        weighted_u += diag.sample_sizes[i] * diag.u_values[i];
        weighted_sq_dist += diag.sample_sizes[i] * d * d;
    }
    diag.u_bar = weighted_u / n;
    diag.between_variance = weighted_sq_dist / n;
    diag.v = diag.u_bar / n;

    const double s = std::sqrt(diag.v);
    CombinedEstimate result{m, s / p.sigma_scale, Method::VirtualSampling};
    return {result, std::move(diag)};
}

CombinedEstimate combine_weighted_mean(std::span<const SourceEstimate> estimates,
                                       const CalibrationPolicy& p) {
    validate(p);
    validate_all(estimates);

    const std::vector<double> variances = calibrated_variances(estimates, p);

    bool any_informative = false;
    bool any_certain = false;
    for (double v : variances) {
        if (std::isfinite(v)) any_informative = true;
        if (v == 0.0) any_certain = true;
    }
    if (!any_informative) throw NoInformativeSources{};

    if (any_certain) {
        // Zero-variance sources take all the weight, split equally; pooled
        // precision is infinite, so the resultant uncertainty is zero.
        double sum = 0.0;
        int count = 0;
        for (size_t i = 0; i < estimates.size(); ++i) {
            if (variances[i] == 0.0) {
                sum += estimates[i].value;
                ++count;
            }
        }
        return CombinedEstimate{sum / count, 0.0, Method::WeightedMean};
    }

    double precision = 0.0;       // sum of 1/v_i
    double weighted_sum = 0.0;    // sum of m_i/v_i
    for (size_t i = 0; i < estimates.size(); ++i) {
        const double vi = variances[i];
        if (!std::isfinite(vi)) continue;
        precision += 1.0 / vi;
        weighted_sum += estimates[i].value / vi;
    }
    const double s = std::sqrt(1.0 / precision);
    return CombinedEstimate{weighted_sum / precision, s / p.sigma_scale,
                            Method::WeightedMean};
}

CombinedEstimate combine_unweighted_mean(std::span<const SourceEstimate> estimates) {
    validate_all(estimates);
    if (estimates.empty()) throw NoInformativeSources{};

    double value_sum = 0.0;
    double unc_sum = 0.0;
    int finite_uncertainties = 0;
    for (const auto& e : estimates) {
        value_sum += e.value;
        if (std::isfinite(e.uncertainty)) {
            unc_sum += e.uncertainty;
            ++finite_uncertainties;
        }
    }
    const double uncertainty =
        finite_uncertainties > 0 ? unc_sum / finite_uncertainties : kInfinity;
    return CombinedEstimate{value_sum / static_cast<double>(estimates.size()),
                            uncertainty, Method::UnweightedMean};
}

Interval combine_intersection(std::span<const Interval> intervals) {
    if (intervals.empty()) throw NoInformativeSources{};

    double lower = -kInfinity;
    double upper = kInfinity;
    bool any_finite = false;
    for (const auto& i : intervals) {
        if (!std::isfinite(i.half_length)) continue;  // whole line, no constraint
        any_finite = true;
        lower = std::max(lower, i.lower());
        upper = std::min(upper, i.upper());
    }
    if (!any_finite) {
        // Every source interval is the whole line, so the intersection is
        // too; half_length = +inf makes the midpoint immaterial, and the
        // mean keeps it deterministic and order-free.
        double sum = 0.0;
        for (const auto& i : intervals) sum += i.midpoint;
        return Interval{sum / static_cast<double>(intervals.size()), kInfinity};
    }
    if (lower > upper) throw EmptyIntersection{};
    return Interval{(lower + upper) / 2.0, (upper - lower) / 2.0};
}

Interval combine_cover(std::span<const Interval> intervals) {
    if (intervals.empty()) throw NoInformativeSources{};

    for (const auto& i : intervals)
        if (!std::isfinite(i.half_length)) throw InfiniteCover{};

    double lower = kInfinity;
    double upper = -kInfinity;
    for (const auto& i : intervals) {
        lower = std::min(lower, i.lower());
        upper = std::max(upper, i.upper());
    }
    return Interval{(lower + upper) / 2.0, (upper - lower) / 2.0};
}

std::pair<double, double> decompose(const VirtualSamplingDiagnostics& d) {
    return {d.v_star, d.between_variance};
}

const char* method_tag(Method m) {
    switch (m) {
        case Method::VirtualSampling: return "virtual-sampling";
        case Method::WeightedMean: return "weighted-mean";
        case Method::UnweightedMean: return "unweighted-mean";
        case Method::Intersect: return "intersect";
        case Method::Cover: return "cover";
    }
    return "?";
}

MethodOutcome evaluate_method(Method method, std::span<const SourceEstimate> estimates,
                              const CalibrationPolicy& p) {
    MethodOutcome out;
    try {
        switch (method) {
            case Method::VirtualSampling:
                out.estimate = combine_virtual_sampling(estimates, p).first;
                break;
            case Method::WeightedMean:
                out.estimate = combine_weighted_mean(estimates, p);
                break;
            case Method::UnweightedMean:
                out.estimate = combine_unweighted_mean(estimates);
                break;
            case Method::Intersect:
            case Method::Cover: {
                std::vector<Interval> intervals;
                intervals.reserve(estimates.size());
                for (const auto& e : estimates) intervals.push_back(to_interval(e, p));
                const Interval r = method == Method::Intersect
                                       ? combine_intersection(intervals)
                                       : combine_cover(intervals);
                const SourceEstimate back = from_interval(r);
                // report on the input scale, like the other methods
                out.estimate =
                    CombinedEstimate{back.value, back.uncertainty / p.sigma_scale, method};
                break;
            }
        }
        out.defined = true;
    } catch (const CombineError& err) {
        out.defined = false;
        out.reason = err.what();
        out.estimate.method = method;
    }
    return out;
}

}  // namespace fuse
