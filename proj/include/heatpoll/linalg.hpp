#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace heatpoll::stats {

// Minimal dense row-major matrix; just what the estimators need.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct LeastSquares {
    std::vector<double> beta;          // original column order; dropped columns get 0
    std::vector<double> residuals;     // y - X beta
    double ssr = 0.0;
    std::size_t rank = 0;
    std::vector<std::size_t> dropped;  // original indices of pivoted-out columns
    Matrix xtx_inverse;                // only populated at full rank
};

// Householder QR with column pivoting. Rank is decided by the ratio
// |R_jj| / |R_00| < 1e-10; pivoted-out columns get coefficient 0 and are
// reported in `dropped` for the caller to accept or reject.
LeastSquares qr_least_squares(const Matrix& X, const std::vector<double>& y);

struct SymmetricEigen {
    std::vector<double> values;
    Matrix vectors; // columns are eigenvectors
};

// Cyclic Jacobi; fine for the small matrices used in inference.
SymmetricEigen jacobi_eigen(const Matrix& A);

// Moore-Penrose pseudo-inverse of a symmetric matrix. `positive_definite`
// reports whether every eigenvalue cleared the tolerance.
Matrix symmetric_pinv(const Matrix& A, bool& positive_definite);

} // namespace heatpoll::stats
