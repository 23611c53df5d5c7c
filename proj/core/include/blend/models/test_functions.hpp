#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "blend/bounds.hpp"
#include "blend/oracle.hpp"

namespace blend::models {

// A closed-form function with a known derivative, used to check the series.
struct AnalyticTestFunction {
    std::string name;
    std::size_t arity = 1;
    std::function<double(std::span<const double>)> evaluate;
    // Directional derivative at `point` along `direction` (direction is {1} for arity 1).
    std::function<double(std::span<const double> point, std::span<const double> direction)> reference_derivative;
    std::optional<GrowthEnvelope> envelope;

    // Scalar oracle; only valid for arity 1.
    FunctionOracle oracle() const;
    double derivative_at(double theta) const;
};

AnalyticTestFunction sine();
AnalyticTestFunction cosine();
AnalyticTestFunction exponential();

// 5 theta^4. Envelope (M=120, b=2.4) holds at theta=2 for h <= 0.1.
AnalyticTestFunction quartic5();

// theta * exp(-theta x) as a function of theta for fixed x > 0.
AnalyticTestFunction exp_density(double x = 1.0);

// sum_i a_i theta_i^2.
AnalyticTestFunction quadratic_sum(std::vector<double> a);

// Scalar catalog lookup: sin, cos, exp, quartic5, expdensity.
std::optional<AnalyticTestFunction> find_catalog_function(std::string_view name);
std::vector<std::string> catalog_names();

// Closed form of (J - T_h)^n applied to theta * exp(-theta x):
// theta e^{-theta x} (1 - e^{-hx})^n - n h e^{-(theta+h)x} (1 - e^{-hx})^{n-1}.
double exp_density_operator_power(double theta, double x, double h, int n);

} // namespace blend::models
