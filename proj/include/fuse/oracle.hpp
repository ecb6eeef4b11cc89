// Independent verification paths for the combination arithmetic:
//  - the expected-squared-distance identity D(c) = var + (mu - c)^2, checked
//    in closed form and by Monte Carlo under more than one distribution;
//  - an exact-rational re-evaluation of the whole virtual-sampling chain,
//    used as the reference for the floating implementation.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace fuse::oracle {

using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// E[(x - c)^2] for any distribution with the given mean and variance.
double exact_expected_sq_distance(double mu, double variance, double c);

enum class SampleLaw { Normal, Uniform };

struct McConfig {
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    SampleLaw distribution = SampleLaw::Normal;
};

struct McResult {
    double estimate = 0.0;
    double standard_error = 0.0;
};

// Monte-Carlo estimate of E[(x - c)^2] with x drawn from the configured law
// realized at the given mean and variance. Deterministic for a fixed seed;
// zero variance degenerates to constant draws.
McResult mc_expected_sq_distance(double mu, double variance, double c,
                                 const McConfig& cfg);

struct RationalEstimate {
    Rational value;
    Rational uncertainty;  // >= 0, finite
};

struct ExactVirtualSampling {
    Rational v_star;
    std::vector<Rational> sample_sizes;
    Rational n;
    Rational m;
    std::vector<Rational> u_values;
    Rational u_bar;
    Rational between_variance;
    Rational v;  // resultant variance; the square root is left to callers
};

// The virtual-sampling chain evaluated in exact rational arithmetic,
// including the zero-variance rule. Throws std::invalid_argument on empty
// input or a negative uncertainty or scale.
ExactVirtualSampling exact_virtual_sampling(const std::vector<RationalEstimate>& estimates,
                                            const Rational& sigma_scale = 1);

}  // namespace fuse::oracle
