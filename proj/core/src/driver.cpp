#include "blend/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace blend {

void BlendConfig::validate() const {
    if (!(h0 > 0.0) || !std::isfinite(h0)) {
        throw std::invalid_argument("h0 must be positive and finite");
    }
    if (n_max < 2 || n_max > kOrderCap) {
        throw std::invalid_argument("n_max must lie in [2, " + std::to_string(kOrderCap) + "]");
    }
    if (max_h_refinements < 0) {
        throw std::invalid_argument("max_h_refinements must be non-negative");
    }
    if (!(h_shrink_factor > 0.0 && h_shrink_factor < 1.0)) {
        throw std::invalid_argument("h_shrink_factor must lie in (0, 1)");
    }
    if (precision_cap < 1 || precision_cap > 17) {
        throw std::invalid_argument("precision_cap must lie in [1, 17]");
    }
    if (min_agree_digits < 1 || min_agree_digits > precision_cap) {
        throw std::invalid_argument("min_agree_digits must lie in [1, precision_cap]");
    }
}

int agreed_significant_digits(double a, double b, int precision_cap) {
    if (precision_cap < 1) {
        throw std::invalid_argument("precision_cap must be >= 1");
    }
    if (!std::isfinite(a) && !std::isfinite(b)) {
        throw std::invalid_argument("agreed_significant_digits: both inputs non-finite");
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
        return 0;
    }
    if (a == b) {
        return precision_cap;
    }
    if (std::signbit(a) != std::signbit(b) && a != 0.0 && b != 0.0) {
        return 0;
    }
    const double diff = std::fabs(a - b);
    const double exponent = std::floor(std::log10(std::max(std::fabs(a), std::fabs(b))));
    int agreed = 0;
    for (int L = 1; L <= precision_cap; ++L) {
        if (diff <= 0.5 * std::pow(10.0, exponent - L + 1)) {
            agreed = L;
        } else {
            break;
        }
    }
    return agreed;
}

double round_to_significant(double x, int digits) {
    if (!std::isfinite(x) || x == 0.0 || digits < 1) {
        return x;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    return std::strtod(buf, nullptr);
}

BlendReport run_blend(const FunctionOracle& oracle, double theta, const BlendConfig& config,
                      EvalOptions options) {
    config.validate();
    BlendReport report;
    const auto start_count = oracle.eval_count();

    for (int r = 0; r <= config.max_h_refinements; ++r) {
        const double h = config.h0 * std::pow(config.h_shrink_factor, r);
        report.trace = blend_partial_sums(oracle, theta, h, config.n_max, options);
        report.h_used = h;
        report.refinements_performed = r;

        const double last = report.trace.delta(config.n_max);
        const double prev = report.trace.delta(config.n_max - 1);
        int agreed = 0;
        if (std::isfinite(last) && std::isfinite(prev)) {
            agreed = agreed_significant_digits(prev, last, config.precision_cap);
        }
        report.agreed_digits = agreed;
        if (agreed >= config.min_agree_digits) {
            report.stabilized = true;
            report.value = round_to_significant(last, agreed);
            break;
        }
        report.value = last;
    }
    report.eval_count = oracle.eval_count() - start_count;
    return report;
}

DirectionSpec DirectionSpec::unit(std::vector<double> v) {
    const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (v.empty() || !(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("direction must be a non-zero finite vector");
    }
    for (double& x : v) {
        x /= norm;
    }
    return as_given(std::move(v));
}

DirectionSpec DirectionSpec::as_given(std::vector<double> v) {
    const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    DirectionSpec d;
    d.normalized = !v.empty() && std::fabs(norm - 1.0) <= 1e-12;
    d.direction = std::move(v);
    return d;
}

FunctionOracle directional_oracle(MultiFunction fn, std::vector<double> theta, const DirectionSpec& dir,
                                  bool parallel_safe) {
    if (!dir.normalized) {
        throw std::invalid_argument("direction must be a unit vector");
    }
    if (theta.size() != dir.direction.size()) {
        throw std::invalid_argument("direction has " + std::to_string(dir.direction.size()) +
                                    " components but theta has " + std::to_string(theta.size()));
    }
    return FunctionOracle(
        [fn = std::move(fn), theta = std::move(theta), v = dir.direction](double t) {
            std::vector<double> point(theta.size());
            for (std::size_t i = 0; i < theta.size(); ++i) {
                point[i] = theta[i] + t * v[i];
            }
            return fn(point);
        },
        parallel_safe);
}

} // namespace blend
