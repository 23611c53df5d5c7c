#pragma once

#include <optional>
#include <string_view>

namespace blend {

// Growth constants: sup |phi^(n)| <= M b^n on the stencil interval, n <= N.
struct GrowthEnvelope {
    double M = 1.0;
    double b = 1.0;

    // Throws std::invalid_argument unless both constants are positive and finite.
    void validate() const;
};

// Which denominator the remainder bound uses. `lemma2` carries (N+1)^{3/2}
// and is the proved statement; `eq12` carries 2^{(N+1)/2}, the form used by
// the published K-exact step example.
enum class BoundFormula { lemma2, eq12 };

std::string_view to_string(BoundFormula f) noexcept;
std::optional<BoundFormula> parse_bound_formula(std::string_view name) noexcept;

struct RemainderEstimate {
    int N = 0;
    double h = 0.0;
    double bound = 0.0;  // +inf when !valid
    bool valid = false;
    BoundFormula formula = BoundFormula::lemma2;
};

// Upper end of the open step interval (0, 1/(2 b e)) on which the bound is finite.
double h_domain(const GrowthEnvelope& env);

// Truncation error bound for the order-N partial sum at step h. Outside the
// step domain the estimate comes back with valid=false rather than throwing.
RemainderEstimate remainder_bound(const GrowthEnvelope& env, int N, double h,
                                  BoundFormula formula = BoundFormula::lemma2);

// |(J - T_h)^n phi(theta)| <= M / sqrt(2 pi n) * (2 h b e)^n.
double operator_power_bound(const GrowthEnvelope& env, int n, double h);

struct StepPlan {
    double h = 0.0;
    double bound = 0.0;         // remainder_bound at h
    double target = 0.0;        // 10^-(K+1)
    double domain_limit = 0.0;  // h_domain(env)
    BoundFormula formula = BoundFormula::lemma2;
    bool fallback = false;      // no bracketed root; h is 0.99 * domain_limit
    int iterations = 0;
};

inline constexpr double kDomainSafetyFactor = 0.99;
inline constexpr int kMaxBisectionSteps = 200;

// Solves remainder_bound(env, N, h) = 10^-(K+1) for h by bisection on the step
// domain. The result is on the conservative side (bound <= target).
StepPlan solve_k_exact_step(const GrowthEnvelope& env, int N, int K,
                            BoundFormula formula = BoundFormula::lemma2);

} // namespace blend
