#include "blend/models/tandem_queue.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace blend::models {

void TandemQueueModel::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("arrival rate must be non-negative and finite");
    }
    if (!(mu1 > 0.0) || !(mu2 > 0.0) || !std::isfinite(mu1) || !std::isfinite(mu2)) {
        throw std::invalid_argument("service rates must be positive and finite");
    }
    if (cap1 < 1 || cap2 < 1) {
        throw std::invalid_argument("capacities must be >= 1");
    }
}

DenseMatrix build_generator(const TandemQueueModel& model) {
    model.validate();
    const std::size_t n = model.state_count();
    DenseMatrix Q(n, n);
    for (int n1 = 0; n1 <= model.cap1; ++n1) {
        for (int n2 = 0; n2 <= model.cap2; ++n2) {
            const std::size_t i = model.state_index(n1, n2);
            if (n1 < model.cap1 && model.lambda > 0.0) {
                Q(i, model.state_index(n1 + 1, n2)) += model.lambda;
            }
            if (n1 > 0 && n2 < model.cap2) {
                Q(i, model.state_index(n1 - 1, n2 + 1)) += model.mu1;
            }
            if (n2 > 0) {
                Q(i, model.state_index(n1, n2 - 1)) += model.mu2;
            }
            double out = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    out += Q(i, j);
                }
            }
            Q(i, i) = -out;
        }
    }
    return Q;
}

StationaryDistribution solve_stationary(const DenseMatrix& generator) {
    const std::size_t n = generator.rows();
    if (n == 0 || generator.cols() != n) {
        throw std::invalid_argument("generator must be square and non-empty");
    }
    DenseMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            A(i, j) = generator(j, i);
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        A(n - 1, j) = 1.0;
    }
    std::vector<double> rhs(n, 0.0);
    rhs[n - 1] = 1.0;

    StationaryDistribution dist;
    dist.probabilities = lu_solve(std::move(A), std::move(rhs));

    double residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += dist.probabilities[i] * generator(i, j);
        }
        residual = std::max(residual, std::fabs(s));
    }
    dist.residual_norm = residual;
    return dist;
}

BlockingEvaluation evaluate_blocking(const TandemQueueModel& model) {
    BlockingEvaluation ev;
    ev.stationary = solve_stationary(build_generator(model));
    for (int n2 = 0; n2 <= model.cap2; ++n2) {
        ev.probability += ev.stationary.probabilities[model.state_index(model.cap1, n2)];
    }
    return ev;
}

double blocking_probability(const TandemQueueModel& model) {
    return evaluate_blocking(model).probability;
}

FunctionOracle queue_sensitivity_oracle(const TandemQueueModel& base) {
    base.validate();
    return FunctionOracle(
        [base](double lambda) {
            if (!(lambda > 0.0)) {
                throw std::invalid_argument("arrival rate " + std::to_string(lambda) +
                                            " is not positive; reduce h");
            }
            TandemQueueModel m = base;
            m.lambda = lambda;
            return blocking_probability(m);
        },
        true);
}

void write_stationary_csv(std::ostream& out, const TandemQueueModel& model, const StationaryDistribution& dist) {
    out << "n1,n2,prob\n";
    char buf[64];
    for (int n1 = 0; n1 <= model.cap1; ++n1) {
        for (int n2 = 0; n2 <= model.cap2; ++n2) {
            std::snprintf(buf, sizeof buf, "%.17g", dist.probabilities[model.state_index(n1, n2)]);
            out << n1 << ',' << n2 << ',' << buf << '\n';
        }
    }
}

} // namespace blend::models
