#include "fuse/oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fuse::oracle {

double exact_expected_sq_distance(double mu, double variance, double c) {
    if (variance < 0.0) throw std::invalid_argument("variance must be >= 0");
    const double d = mu - c;
    return variance + d * d;
}

McResult mc_expected_sq_distance(double mu, double variance, double c,
                                 const McConfig& cfg) {
    if (variance < 0.0 || !std::isfinite(variance))
        throw std::invalid_argument("variance must be finite and >= 0");
    if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double sd = std::sqrt(variance);
    const double half_width = std::sqrt(3.0 * variance);  // uniform with this variance
    std::uniform_real_distribution<double> uniform(-half_width, half_width);

    // Welford accumulation of y = (x - c)^2
    double mean = 0.0;
    double m2 = 0.0;
    for (std::int64_t i = 0; i < cfg.samples; ++i) {
        double x = mu;
        if (variance > 0.0) {
            x += cfg.distribution == SampleLaw::Normal ? sd * normal(rng)
                                                       : uniform(rng);
        }
        const double y = (x - c) * (x - c);
        const double delta = y - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (y - mean);
    }
    const auto n = static_cast<double>(cfg.samples);
    const double sample_var = cfg.samples > 1 ? m2 / (n - 1.0) : 0.0;
    return McResult{mean, std::sqrt(sample_var / n)};
}

ExactVirtualSampling exact_virtual_sampling(const std::vector<RationalEstimate>& estimates,
                                            const Rational& sigma_scale) {
    if (estimates.empty()) throw std::invalid_argument("no informative sources");
    if (sigma_scale <= 0) throw std::invalid_argument("sigma_scale must be positive");
    for (const auto& e : estimates)
        if (e.uncertainty < 0) throw std::invalid_argument("uncertainty must be >= 0");

    ExactVirtualSampling r;
    std::vector<Rational> variances;
    variances.reserve(estimates.size());
    for (const auto& e : estimates) {
        const Rational s = sigma_scale * e.uncertainty;
        variances.push_back(s * s);
    }

    r.v_star = variances.front();
    for (const auto& v : variances) r.v_star = std::min(r.v_star, v);

    r.sample_sizes.reserve(estimates.size());
    for (const auto& v : variances) {
        if (r.v_star == 0)
            r.sample_sizes.emplace_back(v == 0 ? 1 : 0);
        else
            r.sample_sizes.push_back(r.v_star / v);
    }

    r.n = 0;
    Rational weighted_values = 0;
    for (size_t i = 0; i < estimates.size(); ++i) {
        r.n += r.sample_sizes[i];
        weighted_values += r.sample_sizes[i] * estimates[i].value;
    }
    r.m = weighted_values / r.n;

    Rational weighted_u = 0;
    Rational weighted_sq_dist = 0;
    r.u_values.reserve(estimates.size());
    for (size_t i = 0; i < estimates.size(); ++i) {
        const Rational d = estimates[i].value - r.m;
        r.u_values.push_back(r.v_star + d * d);
        weighted_u += r.sample_sizes[i] * r.u_values.back();
        weighted_sq_dist += r.sample_sizes[i] * d * d;
    }
    r.u_bar = weighted_u / r.n;
    r.between_variance = weighted_sq_dist / r.n;
    r.v = r.u_bar / r.n;
    return r;
}

}  // namespace fuse::oracle
