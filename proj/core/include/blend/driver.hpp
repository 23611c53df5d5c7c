#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "blend/oracle.hpp"
#include "blend/series.hpp"

namespace blend {

struct BlendConfig {
    double h0 = 0.01;
    int n_max = 8;
    int max_h_refinements = 8;
    double h_shrink_factor = 0.5;
    int min_agree_digits = 2;
    int precision_cap = 15;

    // Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

struct BlendReport {
    double value = 0.0;          // rounded to agreed_digits when stabilized
    int agreed_digits = 0;       // between the last two partial sums
    double h_used = 0.0;
    PartialSumTrace trace;       // trace at h_used
    int refinements_performed = 0;
    bool stabilized = false;
    std::uint64_t eval_count = 0;
};

// Number of leading significant digits on which a and b agree: the largest
// L <= precision_cap with |a - b| <= 0.5 * 10^(E - L + 1), E = floor(log10 max(|a|,|b|)).
// Bit-identical inputs give precision_cap; opposite signs give 0.
int agreed_significant_digits(double a, double b, int precision_cap);

// x rounded to `digits` significant decimal digits.
double round_to_significant(double x, int digits);

// Partial sums up to n_max at h0; accept when the last two agree in at least
// min_agree_digits, otherwise shrink h and retry.
BlendReport run_blend(const FunctionOracle& oracle, double theta, const BlendConfig& config,
                      EvalOptions options = {});

struct DirectionSpec {
    std::vector<double> direction;
    bool normalized = false;

    // Unit vector along v. Throws on an empty or zero vector.
    static DirectionSpec unit(std::vector<double> v);
    // Wraps v as given; `normalized` reflects whether |v| == 1 to 1e-12.
    static DirectionSpec as_given(std::vector<double> v);
};

using MultiFunction = std::function<double(std::span<const double>)>;

// Scalar restriction g(t) = phi(theta + t v). Differentiating g at t = 0 gives
// the directional derivative; stencil points are theta + k h v.
FunctionOracle directional_oracle(MultiFunction fn, std::vector<double> theta, const DirectionSpec& dir,
                                  bool parallel_safe = false);

} // namespace blend
