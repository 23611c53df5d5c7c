#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "blend/linalg.hpp"
#include "blend/oracle.hpp"

namespace blend::models {

/**
 * Two stations in series with finite capacity. Poisson arrivals at rate
 * lambda join station 1 unless it already holds cap1 jobs (the arrival is
 * lost). Station 1 serves at rate mu1 but is stopped while station 2 holds
 * cap2 jobs; station 2 serves at rate mu2. Capacities count the job in service.
 *
 * States (n1, n2) are numbered lexicographically: index = n1 * (cap2 + 1) + n2.
 */
struct TandemQueueModel {
    double lambda = 1.0;
    double mu1 = 1.0;
    double mu2 = 2.0;
    int cap1 = 10;
    int cap2 = 10;

    // lambda >= 0 (zero gives the trivially empty system), service rates > 0,
    // capacities >= 1. Throws std::invalid_argument otherwise.
    void validate() const;

    std::size_t state_count() const noexcept {
        return static_cast<std::size_t>(cap1 + 1) * static_cast<std::size_t>(cap2 + 1);
    }
    std::size_t state_index(int n1, int n2) const noexcept {
        return static_cast<std::size_t>(n1) * static_cast<std::size_t>(cap2 + 1) + static_cast<std::size_t>(n2);
    }
};

DenseMatrix build_generator(const TandemQueueModel& model);

struct StationaryDistribution {
    std::vector<double> probabilities;
    double residual_norm = 0.0;  // max_j |(pi Q)_j|
};

// pi Q = 0, sum pi = 1: transposed balance equations with the last one
// replaced by the normalisation row, solved by dense LU.
StationaryDistribution solve_stationary(const DenseMatrix& generator);

// Stationary probability that station 1 is full (arrivals are lost).
double blocking_probability(const TandemQueueModel& model);

struct BlockingEvaluation {
    double probability = 0.0;
    StationaryDistribution stationary;
};
BlockingEvaluation evaluate_blocking(const TandemQueueModel& model);

// lambda -> blocking probability with the other parameters held at `base`.
// Each call builds and solves its own system, so the oracle is parallel safe.
FunctionOracle queue_sensitivity_oracle(const TandemQueueModel& base);

// CSV with header n1,n2,prob in state order.
void write_stationary_csv(std::ostream& out, const TandemQueueModel& model, const StationaryDistribution& dist);

} // namespace blend::models
