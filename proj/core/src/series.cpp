#include "blend/series.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "blend/errors.hpp"

namespace blend {
namespace {

void check_order(int order, const char* what) {
    if (order < 1) {
        throw std::invalid_argument(std::string(what) + ": order must be >= 1");
    }
    if (order > kOrderCap) {
        throw OrderTooLarge(std::string(what) + ": order too large for exact weights (" +
                            std::to_string(order) + " > " + std::to_string(kOrderCap) + ")");
    }
}

void check_step(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("step h must be positive and finite");
    }
}

// Pascal triangle up to the cap; every entry fits in 64 bits.
const std::array<std::array<std::uint64_t, kOrderCap + 1>, kOrderCap + 1>& pascal() {
    static const auto table = [] {
        std::array<std::array<std::uint64_t, kOrderCap + 1>, kOrderCap + 1> t{};
        for (int n = 0; n <= kOrderCap; ++n) {
            t[n][0] = t[n][n] = 1;
            for (int k = 1; k < n; ++k) {
                t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
            }
        }
        return t;
    }();
    return table;
}

const std::vector<StencilWeights>& weight_table() {
    static const std::vector<StencilWeights> table = [] {
        std::vector<StencilWeights> all;
        all.reserve(kOrderCap);
        for (int n = 1; n <= kOrderCap; ++n) {
            all.push_back(stencil_weights(n));
        }
        return all;
    }();
    return table;
}

double partial_sum(std::span<const double> values, double h, int order) {
    const auto& w = weight_table()[static_cast<std::size_t>(order - 1)];
    return w.apply(values.first(static_cast<std::size_t>(order) + 1), h);
}

} // namespace

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) {
        throw std::invalid_argument("binomial: need 0 <= k <= n");
    }
    if (n > kOrderCap) {
        throw OrderTooLarge("binomial: order too large for exact weights (" + std::to_string(n) +
                            " > " + std::to_string(kOrderCap) + ")");
    }
    return pascal()[n][k];
}

StencilWeights stencil_weights(int order) {
    check_order(order, "stencil_weights");
    StencilWeights w;
    w.order_ = order;
    std::uint64_t den = 1;
    for (int n = 1; n <= order; ++n) {
        den = std::lcm(den, static_cast<std::uint64_t>(n));
    }
    w.denominator_ = den;
    w.numerators_.assign(static_cast<std::size_t>(order) + 1, 0);
    for (int n = 1; n <= order; ++n) {
        const ExactInt scale = static_cast<ExactInt>(den / static_cast<std::uint64_t>(n));
        for (int k = 0; k <= n; ++k) {
            const ExactInt term = static_cast<ExactInt>(binomial(n, k)) * scale;
            w.numerators_[k] += (k % 2 == 0) ? term : -term;
        }
    }
    const auto dden = static_cast<long double>(den);
    for (ExactInt num : w.numerators_) {
        // |num| < 2^86, so num - hi fits in 53 bits and hi + lo == num exactly.
        const auto hi = static_cast<double>(num);
        const auto lo = static_cast<double>(num - static_cast<ExactInt>(hi));
        w.hi_.push_back(hi);
        w.lo_.push_back(lo);
        w.weights_.push_back(static_cast<double>((static_cast<long double>(hi) + lo) / dden));
    }
    return w;
}

double StencilWeights::apply(std::span<const double> values, double h) const {
    if (values.size() < static_cast<std::size_t>(order_) + 1) {
        throw std::invalid_argument("StencilWeights::apply: need order+1 values");
    }
    CompensatedSum acc;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(order_); ++k) {
        acc.add_product(hi_[k], values[k]);
        acc.add_product(lo_[k], values[k]);
    }
    return -(acc.result() / static_cast<double>(denominator_)) / h;
}

std::vector<double> evaluate_stencil(const FunctionOracle& oracle, double theta, double h,
                                     std::size_t count, EvalOptions options) {
    std::vector<double> values(count);
    std::vector<std::exception_ptr> failures(count);

    auto eval_one = [&](std::size_t k) {
        try {
            values[k] = oracle.evaluate(stencil_point(theta, h, k));
        } catch (...) {
            failures[k] = std::current_exception();
        }
    };

    const unsigned threads = std::min<unsigned>(options.max_threads, static_cast<unsigned>(count));
    if (!oracle.parallel_safe() || threads <= 1) {
        for (std::size_t k = 0; k < count; ++k) {
            eval_one(k);
            if (failures[k]) {
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < count; k = next++) {
                    eval_one(k);
                }
            });
        }
    }

    for (std::size_t k = 0; k < count; ++k) {
        if (!failures[k]) {
            continue;
        }
        const double point = stencil_point(theta, h, k);
        try {
            std::rethrow_exception(failures[k]);
        } catch (const OracleError&) {
            throw;
        } catch (const std::exception& e) {
            throw OracleError(k, point, e.what());
        } catch (...) {
            throw OracleError(k, point, "unknown exception");
        }
    }
    return values;
}

OperatorPowerResult operator_power(const FunctionOracle& oracle, double theta, double h, int n,
                                   EvalOptions options) {
    check_order(n, "operator_power");
    check_step(h);
    const auto values = evaluate_stencil(oracle, theta, h, static_cast<std::size_t>(n) + 1, options);
    return operator_power(values, n);
}

OperatorPowerResult operator_power(std::span<const double> cached_values, int n) {
    check_order(n, "operator_power");
    if (cached_values.size() < static_cast<std::size_t>(n) + 1) {
        throw std::invalid_argument("operator_power: need n+1 cached values");
    }
    return {n, alternating_binomial_sum(cached_values.first(static_cast<std::size_t>(n) + 1))};
}

PartialSumTrace blend_partial_sums(const FunctionOracle& oracle, double theta, double h, int n_max,
                                   EvalOptions options) {
    check_order(n_max, "blend_partial_sums");
    check_step(h);
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("theta must be finite");
    }

    PartialSumTrace trace;
    trace.h = h;
    trace.theta = theta;
    const auto before = oracle.eval_count();
    trace.cached_values = evaluate_stencil(oracle, theta, h, static_cast<std::size_t>(n_max) + 1, options);
    trace.eval_count_used = oracle.eval_count() - before;

    trace.deltas.reserve(static_cast<std::size_t>(n_max));
    for (int order = 1; order <= n_max; ++order) {
        trace.deltas.push_back(partial_sum(trace.cached_values, h, order));
    }
    return trace;
}

double recompute_delta(const PartialSumTrace& trace, int order) {
    if (order < 1 || order > trace.n_max()) {
        throw std::out_of_range("recompute_delta: order outside the trace");
    }
    return partial_sum(trace.cached_values, trace.h, order);
}

} // namespace blend
