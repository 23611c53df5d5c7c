#pragma once

#include <cmath>

namespace blend {

// Error-free transforms and a fixed-order compensated accumulator. The
// accumulator keeps a running sum plus the exact rounding error of every
// addition and product fed into it, so the result is as accurate as if the
// weighted sum had been formed in twice the working precision.
struct TwoTerm {
    double value;
    double error;
};

inline TwoTerm two_sum(double a, double b) noexcept {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline TwoTerm two_prod(double a, double b) noexcept {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

class CompensatedSum {
public:
    void add(double x) noexcept {
        const TwoTerm t = two_sum(sum_, x);
        sum_ = t.value;
        carry_ += t.error;
    }

    // Adds a * b with the product's rounding error tracked.
    void add_product(double a, double b) noexcept {
        const TwoTerm p = two_prod(a, b);
        add(p.value);
        carry_ += p.error;
    }

    double result() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

} // namespace blend
