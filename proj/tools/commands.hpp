#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blend/bounds.hpp"
#include "blend/driver.hpp"
#include "blend/models/tandem_queue.hpp"
#include "blend/oracle.hpp"
#include "output.hpp"

namespace blend::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotStabilized = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitRuntime = 70;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct DiffOptions {
    std::string function;  // catalog name or expression in x
    double theta = 0.0;
    BlendConfig config;
    bool h0_given = false;
};

struct PlanOptions {
    GrowthEnvelope envelope;
    int N = 2;
    int K = 6;
    BoundFormula formula = BoundFormula::lemma2;
};

struct DirectionOptions {
    int dim = 9;
    std::vector<double> a;      // defaults to 2^-i
    std::vector<double> theta;  // defaults to i
    std::vector<double> v;      // defaults to the published 9-vector, or alternating signs
    bool normalize = false;
    BlendConfig config;
};

struct QueueOptions {
    models::TandemQueueModel model;
    BlendConfig config;
    std::optional<std::string> stationary_csv;
};

OutputRecord cmd_diff(const DiffOptions& opts, EvalOptions eval = {});
OutputRecord cmd_plan(const PlanOptions& opts);
OutputRecord cmd_tables(const std::vector<int>& which, EvalOptions eval = {});
OutputRecord cmd_direction(const DirectionOptions& opts, EvalOptions eval = {});
OutputRecord cmd_queue(const QueueOptions& opts, EvalOptions eval = {});

// The published 9-dimensional direction (1/3)(-1,1,-1,-1,1,1,1,-1,1).
std::vector<double> published_direction();

// Full command line entry point: parses args (without the program name),
// writes the rendered record to `out` (or --out), diagnostics to `err`, and
// returns the exit code. Reads BLEND_THREADS on every call.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace blend::cli
