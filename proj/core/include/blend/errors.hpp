#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blend {

// Requested order exceeds what the exact-integer weight tables can hold.
class OrderTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A black-box evaluation failed. Carries the stencil index and the argument.
class OracleError : public std::runtime_error {
public:
    OracleError(std::size_t index, double point, const std::string& what);

    std::size_t index() const noexcept { return index_; }
    double point() const noexcept { return point_; }

private:
    std::size_t index_;
    double point_;
};

// Dense solve hit a zero (or negligible) pivot.
class SingularSystem : public std::runtime_error {
public:
    SingularSystem(std::size_t column, double pivot);

    std::size_t column() const noexcept { return column_; }
    double pivot() const noexcept { return pivot_; }

private:
    std::size_t column_;
    double pivot_;
};

} // namespace blend
