#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "blend/oracle.hpp"
#include "blend/summation.hpp"

namespace blend {

// Largest series order for which the stencil weights are held exactly.
inline constexpr int kOrderCap = 40;

using ExactInt = __int128;

// C(n, k) exactly. Throws OrderTooLarge for n > kOrderCap and
// std::invalid_argument for k > n or negative input.
std::uint64_t binomial(int n, int k);

/**
 * Single-sum form of the truncated logarithmic derivative series.
 *
 * For order N the series -(1/h) sum_{n=1..N} (1/n) sum_{k=0..n} (-1)^k C(n,k) phi(theta+kh)
 * collapses to -(1/h) sum_{k=0..N} w_k phi(theta+kh) with
 * w_k = sum_{n=max(k,1)..N} (-1)^k C(n,k) / n.
 *
 * The weights are held exactly as numerator_k / lcm(1..N). Each numerator is
 * also split into a pair of doubles (hi + lo == numerator, exactly), which is
 * what apply() feeds to the compensated dot product.
 */
class StencilWeights {
public:
    int order() const noexcept { return order_; }

    // w_k rounded once from the exact rational.
    std::span<const double> weights() const noexcept { return weights_; }
    std::span<const ExactInt> numerators() const noexcept { return numerators_; }
    std::uint64_t denominator() const noexcept { return denominator_; }
    double numerator_hi(std::size_t k) const { return hi_[k]; }
    double numerator_lo(std::size_t k) const { return lo_[k]; }

    // -(1/h) * sum_k w_k * values[k] for values[k] = phi(theta + k h), k = 0..order.
    double apply(std::span<const double> values, double h) const;

private:
    friend StencilWeights stencil_weights(int);

    int order_ = 0;
    std::uint64_t denominator_ = 1;
    std::vector<ExactInt> numerators_;
    std::vector<double> weights_;
    std::vector<double> hi_;
    std::vector<double> lo_;
};

StencilWeights stencil_weights(int order);

// Same sum as StencilWeights::apply in an arbitrary real type (used with
// multiprecision types to look beneath double rounding). Plain ordered sum.
template <class Real>
Real apply_weights(const StencilWeights& w, std::span<const Real> values, const Real& h) {
    Real acc = 0;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(w.order()); ++k) {
        const Real num = Real(w.numerator_hi(k)) + Real(w.numerator_lo(k));
        acc += num * values[k];
    }
    return -(acc / Real(static_cast<double>(w.denominator()))) / h;
}

// sum_{k=0..n} (-1)^k C(n,k) values[k] with n = values.size() - 1.
// The double instantiation uses the compensated accumulator.
template <class Real>
Real alternating_binomial_sum(std::span<const Real> values) {
    const int n = static_cast<int>(values.size()) - 1;
    if constexpr (std::is_same_v<Real, double>) {
        CompensatedSum acc;
        for (int k = 0; k <= n; ++k) {
            const double c = static_cast<double>(binomial(n, k));
            acc.add_product((k % 2 == 0) ? c : -c, values[k]);
        }
        return acc.result();
    } else {
        Real acc = 0;
        for (int k = 0; k <= n; ++k) {
            const Real c = Real(static_cast<double>(binomial(n, k)));
            acc += (k % 2 == 0) ? Real(c * values[k]) : Real(-c * values[k]);
        }
        return acc;
    }
}

inline double stencil_point(double theta, double h, std::size_t k) noexcept {
    return theta + static_cast<double>(k) * h;
}

// phi(theta + k h) for k = 0..count-1. Runs concurrently when the oracle is
// parallel_safe and options allow more than one thread; results land in slot k
// either way. The first failing index (lowest k) is rethrown as OracleError.
std::vector<double> evaluate_stencil(const FunctionOracle& oracle, double theta, double h,
                                     std::size_t count, EvalOptions options = {});

struct OperatorPowerResult {
    int n = 0;
    double value = 0.0;
};

// (J - T_h)^n phi(theta): n + 1 fresh evaluations.
OperatorPowerResult operator_power(const FunctionOracle& oracle, double theta, double h, int n,
                                   EvalOptions options = {});
// Same quantity from cached values phi(theta + k h), k = 0..n (no evaluations).
OperatorPowerResult operator_power(std::span<const double> cached_values, int n);

struct PartialSumTrace {
    double h = 0.0;
    double theta = 0.0;
    std::vector<double> deltas;         // deltas[N-1] is the order-N partial sum
    std::vector<double> cached_values;  // phi(theta + k h), k = 0..N_max
    std::uint64_t eval_count_used = 0;

    int n_max() const noexcept { return static_cast<int>(deltas.size()); }
    double delta(int order) const { return deltas.at(static_cast<std::size_t>(order - 1)); }
};

PartialSumTrace blend_partial_sums(const FunctionOracle& oracle, double theta, double h, int n_max,
                                   EvalOptions options = {});

// Order-N partial sum rebuilt from a trace's cached values alone.
double recompute_delta(const PartialSumTrace& trace, int order);

} // namespace blend
