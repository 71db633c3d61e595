#include "heatpoll/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace heatpoll::stats {

namespace {
constexpr double kRankTol = 1e-10;
}

LeastSquares qr_least_squares(const Matrix& X, const std::vector<double>& y) {
    const std::size_t n = X.rows();
    const std::size_t k = X.cols();
    if (y.size() != n) throw std::invalid_argument("y length does not match X rows");

    Matrix a = X;                 // becomes R in the upper triangle
    std::vector<double> qty = y;  // becomes Q'y
    std::vector<std::size_t> perm(k);
    for (std::size_t j = 0; j < k; ++j) perm[j] = j;

    // Remaining squared norms for pivot selection, recomputed from the
    // active submatrix to stay robust against downdating error.
    auto col_norm2 = [&](std::size_t col, std::size_t from_row) {
        double s = 0.0;
        for (std::size_t i = from_row; i < n; ++i) s += a(i, col) * a(i, col);
        return s;
    };

    std::size_t rank = 0;
    double r00 = 0.0;
    std::vector<double> hv(n);
    for (std::size_t j = 0; j < k && j < n; ++j) {
        std::size_t best = j;
        double best_norm = col_norm2(j, j);
        for (std::size_t c = j + 1; c < k; ++c) {
            const double norm = col_norm2(c, j);
            if (norm > best_norm) {
                best_norm = norm;
                best = c;
            }
        }
        if (best != j) {
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, j), a(i, best));
            std::swap(perm[j], perm[best]);
        }

        const double alpha = std::sqrt(best_norm);
        if (j == 0) r00 = alpha;
        if (alpha == 0.0 || (j > 0 && alpha < kRankTol * r00)) break;

        // Householder vector for column j.
        const double sign = a(j, j) >= 0.0 ? 1.0 : -1.0;
        const double pivot = -sign * alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = j; i < n; ++i) {
            hv[i] = a(i, j);
            if (i == j) hv[i] -= pivot;
            vnorm2 += hv[i] * hv[i];
        }
        if (vnorm2 == 0.0) break;

        const auto reflect = [&](auto&& get, auto&& set) {
            double dot = 0.0;
            for (std::size_t i = j; i < n; ++i) dot += hv[i] * get(i);
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = j; i < n; ++i) set(i, get(i) - f * hv[i]);
        };
        for (std::size_t c = j; c < k; ++c) {
            reflect([&](std::size_t i) { return a(i, c); },
                    [&](std::size_t i, double v) { a(i, c) = v; });
        }
        reflect([&](std::size_t i) { return qty[i]; },
                [&](std::size_t i, double v) { qty[i] = v; });
        a(j, j) = pivot;
        ++rank;
    }

    LeastSquares out;
    out.rank = rank;
    for (std::size_t j = rank; j < k; ++j) out.dropped.push_back(perm[j]);

    // Back-substitution on the rank x rank leading block.
    std::vector<double> beta_pivot(rank, 0.0);
    for (std::size_t step = rank; step-- > 0;) {
        double s = qty[step];
        for (std::size_t c = step + 1; c < rank; ++c) s -= a(step, c) * beta_pivot[c];
        beta_pivot[step] = s / a(step, step);
    }
    out.beta.assign(k, 0.0);
    for (std::size_t j = 0; j < rank; ++j) out.beta[perm[j]] = beta_pivot[j];

    out.residuals.resize(n);
    out.ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fitted = 0.0;
        for (std::size_t j = 0; j < k; ++j) fitted += X(i, j) * out.beta[j];
        out.residuals[i] = y[i] - fitted;
        out.ssr += out.residuals[i] * out.residuals[i];
    }

    if (rank == k) {
        // (X'X)^-1 = P R^-1 R^-T P'
        Matrix rinv(k, k, 0.0);
        for (std::size_t j = 0; j < k; ++j) {
            rinv(j, j) = 1.0 / a(j, j);
            for (std::size_t i = j; i-- > 0;) {
                double s = 0.0;
                for (std::size_t c = i + 1; c <= j; ++c) s += a(i, c) * rinv(c, j);
                rinv(i, j) = -s / a(i, i);
            }
        }
        Matrix inv(k, k, 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                double s = 0.0;
                for (std::size_t c = std::max(i, j); c < k; ++c) s += rinv(i, c) * rinv(j, c);
                inv(perm[i], perm[j]) = s;
            }
        }
        out.xtx_inverse = std::move(inv);
    }
    return out;
}

SymmetricEigen jacobi_eigen(const Matrix& A) {
    const std::size_t n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("jacobi_eigen needs a square matrix");
    Matrix a = A;
    Matrix v(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        }
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a(p, i);
                    const double aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }
    SymmetricEigen out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
    out.vectors = std::move(v);
    return out;
}

Matrix symmetric_pinv(const Matrix& A, bool& positive_definite) {
    const std::size_t n = A.rows();
    const SymmetricEigen eig = jacobi_eigen(A);
    double max_abs = 0.0;
    for (double v : eig.values) max_abs = std::max(max_abs, std::abs(v));
    const double tol = max_abs * 1e-12;

    positive_definite = true;
    std::vector<double> inv_values(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (eig.values[i] > tol) {
            inv_values[i] = 1.0 / eig.values[i];
        } else {
            positive_definite = false;
        }
    }
    Matrix out(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < n; ++c) {
                s += eig.vectors(i, c) * inv_values[c] * eig.vectors(j, c);
            }
            out(i, j) = s;
        }
    }
    return out;
}

} // namespace heatpoll::stats
