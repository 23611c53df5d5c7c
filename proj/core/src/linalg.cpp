#include "blend/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "blend/errors.hpp"

namespace blend {

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) {
        m = std::max(m, std::fabs(x));
    }
    return m;
}

std::vector<double> lu_solve(DenseMatrix A, std::vector<double> rhs, double relative_tol) {
    const std::size_t n = A.rows();
    if (A.cols() != n || rhs.size() != n) {
        throw std::invalid_argument("lu_solve: dimension mismatch");
    }
    const double tol = relative_tol * A.max_abs();

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(A(r, col)) > std::fabs(A(piv, col))) {
                piv = r;
            }
        }
        if (!(std::fabs(A(piv, col)) > tol)) {
            throw SingularSystem(col, A(piv, col));
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(A(col, j), A(piv, j));
            }
            std::swap(rhs[col], rhs[piv]);
        }
        const double d = A(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = A(r, col) / d;
            if (f == 0.0) {
                continue;
            }
            A(r, col) = f;
            for (std::size_t j = col + 1; j < n; ++j) {
                A(r, j) -= f * A(col, j);
            }
            rhs[r] -= f * rhs[col];
        }
    }

    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            s -= A(i, j) * x[j];
        }
        x[i] = s / A(i, i);
    }
    return x;
}

} // namespace blend
