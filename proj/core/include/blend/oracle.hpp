#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <utility>

namespace blend {

/**
 * Black-box scalar function theta -> phi(theta).
 *
 * The wrapped callable must be deterministic. Every call through evaluate()
 * is counted; the counter is thread-safe so a parallel_safe oracle may be
 * evaluated from several threads at once.
 */
class FunctionOracle {
public:
    using Fn = std::function<double(double)>;

    FunctionOracle(Fn fn, bool parallel_safe = false)
        : fn_(std::move(fn)), parallel_safe_(parallel_safe) {}

    FunctionOracle(const FunctionOracle& other)
        : fn_(other.fn_), parallel_safe_(other.parallel_safe_), calls_(other.eval_count()) {}
    FunctionOracle& operator=(const FunctionOracle& other) {
        fn_ = other.fn_;
        parallel_safe_ = other.parallel_safe_;
        calls_.store(other.eval_count());
        return *this;
    }

    double evaluate(double theta) const {
        calls_.fetch_add(1, std::memory_order_relaxed);
        return fn_(theta);
    }
    double operator()(double theta) const { return evaluate(theta); }

    bool parallel_safe() const noexcept { return parallel_safe_; }
    std::uint64_t eval_count() const noexcept { return calls_.load(std::memory_order_relaxed); }
    void reset_count() noexcept { calls_.store(0); }

private:
    Fn fn_;
    bool parallel_safe_;
    mutable std::atomic<std::uint64_t> calls_{0};
};

// How many worker threads may evaluate an oracle concurrently. 0 or 1 is serial.
struct EvalOptions {
    unsigned max_threads = 0;
};

// Reads BLEND_THREADS (0 = serial). Unset falls back to hardware concurrency;
// anything other than a non-negative integer throws std::invalid_argument.
EvalOptions eval_options_from_env();

} // namespace blend
