#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace blend {

// Row-major dense matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    double max_abs() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Solves A x = rhs by LU with partial pivoting. A pivot with magnitude at or
// below `relative_tol * max|A|` raises SingularSystem.
std::vector<double> lu_solve(DenseMatrix A, std::vector<double> rhs, double relative_tol = 1e-13);

} // namespace blend
