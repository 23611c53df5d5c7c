#include "blend/oracle.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>
#include <thread>

#include "blend/errors.hpp"

namespace blend {

OracleError::OracleError(std::size_t index, double point, const std::string& what)
    : std::runtime_error("oracle evaluation failed at k=" + std::to_string(index) +
                         " (point " + std::to_string(point) + "): " + what),
      index_(index), point_(point) {}

SingularSystem::SingularSystem(std::size_t column, double pivot)
    : std::runtime_error("singular system: pivot " + std::to_string(pivot) + " in column " +
                         std::to_string(column) + " (reducible chain?)"),
      column_(column), pivot_(pivot) {}

EvalOptions eval_options_from_env() {
    EvalOptions opts;
    opts.max_threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("BLEND_THREADS")) {
        unsigned value = 0;
        const char* end = env + std::strlen(env);
        auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec != std::errc{} || ptr != end || ptr == env) {
            throw std::invalid_argument(std::string("BLEND_THREADS must be a non-negative integer, got '") + env + "'");
        }
        opts.max_threads = value;
    }
    return opts;
}

} // namespace blend
