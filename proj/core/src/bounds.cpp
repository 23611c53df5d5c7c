#include "blend/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace blend {
namespace {

double denominator(int N, BoundFormula formula) {
    const double root_two_pi = std::sqrt(2.0 * std::numbers::pi);
    const double np1 = static_cast<double>(N) + 1.0;
    switch (formula) {
    case BoundFormula::eq12:
        return root_two_pi * std::pow(2.0, np1 / 2.0);
    case BoundFormula::lemma2:
    default:
        return root_two_pi * std::pow(np1, 1.5);
    }
}

} // namespace

void GrowthEnvelope::validate() const {
    if (!(M > 0.0) || !(b > 0.0) || !std::isfinite(M) || !std::isfinite(b)) {
        throw std::invalid_argument("growth envelope needs M > 0 and b > 0");
    }
}

std::string_view to_string(BoundFormula f) noexcept {
    return f == BoundFormula::eq12 ? "eq12" : "lemma2";
}

std::optional<BoundFormula> parse_bound_formula(std::string_view name) noexcept {
    if (name == "lemma2") {
        return BoundFormula::lemma2;
    }
    if (name == "eq12") {
        return BoundFormula::eq12;
    }
    return std::nullopt;
}

double h_domain(const GrowthEnvelope& env) {
    env.validate();
    return 1.0 / (2.0 * env.b * std::numbers::e);
}

RemainderEstimate remainder_bound(const GrowthEnvelope& env, int N, double h, BoundFormula formula) {
    if (N < 1) {
        throw std::invalid_argument("remainder_bound: N must be >= 1");
    }
    if (!(h > 0.0)) {
        throw std::invalid_argument("remainder_bound: h must be positive");
    }
    const double limit = h_domain(env);
    RemainderEstimate est{N, h, std::numeric_limits<double>::infinity(), false, formula};
    if (!(h < limit)) {
        return est;
    }
    // q = 2hbe = h / limit; 1 - q is formed as (limit - h) / limit so it stays
    // positive right up to the boundary.
    const double q = h / limit;
    est.valid = true;
    est.bound = env.M / denominator(N, formula) * std::pow(q, N + 1) * (limit / (limit - h));
    return est;
}

double operator_power_bound(const GrowthEnvelope& env, int n, double h) {
    env.validate();
    if (n < 1) {
        throw std::invalid_argument("operator_power_bound: n must be >= 1");
    }
    if (h < 0.0) {
        throw std::invalid_argument("operator_power_bound: h must be non-negative");
    }
    const double q = 2.0 * h * env.b * std::numbers::e;
    return env.M / std::sqrt(2.0 * std::numbers::pi * n) * std::pow(q, n);
}

StepPlan solve_k_exact_step(const GrowthEnvelope& env, int N, int K, BoundFormula formula) {
    env.validate();
    if (N < 1 || K < 1) {
        throw std::invalid_argument("solve_k_exact_step: N and K must be >= 1");
    }
    if (K > 300) {
        throw std::invalid_argument("solve_k_exact_step: K too large for double targets");
    }

    StepPlan plan;
    plan.formula = formula;
    plan.domain_limit = h_domain(env);
    plan.target = std::pow(10.0, -(K + 1));

    double hi = std::nextafter(plan.domain_limit, 0.0);
    if (remainder_bound(env, N, hi, formula).bound < plan.target) {
        plan.fallback = true;
        plan.h = kDomainSafetyFactor * plan.domain_limit;
        plan.bound = remainder_bound(env, N, plan.h, formula).bound;
        return plan;
    }

    double lo = hi;
    while (remainder_bound(env, N, lo, formula).bound > plan.target) {
        hi = lo;
        lo /= 2.0;
        if (lo == 0.0) {
            throw std::invalid_argument("solve_k_exact_step: target below representable bounds");
        }
    }

    // bound(lo) <= target < bound(hi) throughout.
    for (; plan.iterations < kMaxBisectionSteps; ++plan.iterations) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (remainder_bound(env, N, mid, formula).bound <= plan.target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    plan.h = lo;
    plan.bound = remainder_bound(env, N, lo, formula).bound;
    return plan;
}

} // namespace blend
