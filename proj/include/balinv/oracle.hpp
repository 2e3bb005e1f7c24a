#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "balinv/approx_inverse.hpp"
#include "balinv/dense_matrix.hpp"
#include "balinv/matrix.hpp"

namespace balinv {

namespace detail {

// Lower Cholesky factor in place; throws if a pivot is not strictly positive.
inline void cholesky_in_place(DenseMatrix& a) {
    const std::size_t n = a.size();
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::runtime_error(
                "factorization failed: matrix is not positive definite");
        const double l = std::sqrt(d);
        a(j, j) = l;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / l;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a(i, j) = 0.0;
}

inline DenseMatrix invert_spd(DenseMatrix a) {
    const std::size_t n = a.size();
    cholesky_in_place(a);
    DenseMatrix inv(n);
    std::vector<double> y(n);
    for (std::size_t col = 0; col < n; ++col) {
        // L y = e_col, then L^T x = y.
        for (std::size_t i = 0; i < n; ++i) {
            double s = (i == col) ? 1.0 : 0.0;
            for (std::size_t k = 0; k < i; ++k) s -= a(i, k) * y[k];
            y[i] = s / a(i, i);
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t k = ii + 1; k < n; ++k) s -= a(k, ii) * inv(k, col);
            inv(ii, col) = s / a(ii, ii);
        }
    }
    symmetrize(inv);
    return inv;
}

} // namespace detail

/// Exact dense inverse via Cholesky; the ground truth every approximation is
/// judged against. Output is symmetrized to remove rounding asymmetry before
/// sup-norm differencing. Intended for n up to a few hundred.
template <typename MatrixT>
DenseMatrix exact_inverse(const MatrixT& t) {
    return detail::invert_spd(to_dense(t));
}

/// Closed-form inverse of the light-row family, checked against the dense
/// oracle. The closed form is a cross-check, never the ground truth.
struct ClosedFormInverse {
    DenseMatrix values;
    bool matches_dense;        ///< within 1e-9 relative of the dense inverse
    double relative_deviation; ///< sup |closed - dense| / sup |dense|
};

inline ClosedFormInverse sherman_morrison_inverse(std::size_t n,
                                                  double min_entry,
                                                  double max_entry) {
    if (n < 4)
        throw std::invalid_argument("closed-form inverse requires n >= 4");
    if (!(min_entry > 0.0) || !(min_entry < max_entry))
        throw std::invalid_argument(
            "closed-form inverse requires 0 < min < max; use exact_inverse "
            "for the degenerate family");
    const double m = min_entry;
    const double M = max_entry;
    const double nn = static_cast<double>(n);
    const double a = (nn - 1.0) * M - m;       // heavy-row diagonal less coupling
    const double b = (nn - 2.0) * m;           // light-row diagonal less coupling
    const double g = 1.0 + (nn - 1.0) * m / a + 1.0 / (nn - 2.0);

    DenseMatrix inv(n);
    const double block_corr = m / (a * a * g);
    const double edge = -1.0 / ((nn - 2.0) * a * g);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = 0; j + 1 < n; ++j)
            inv(i, j) = (i == j ? 1.0 / a : 0.0) - block_corr;
        inv(i, n - 1) = edge;
        inv(n - 1, i) = edge;
    }
    inv(n - 1, n - 1) = 1.0 / b - 1.0 / ((nn - 2.0) * (nn - 2.0) * m * g);

    const DenseMatrix dense = exact_inverse(worst_case_family(n, m, M));
    const double dev = sup_norm(subtract(inv, dense)) / sup_norm(dense);
    return {std::move(inv), dev <= 1e-9, dev};
}

/// Oracle error, certified bound, and their ratio for one matrix.
struct ErrorSummary {
    double error; ///< sup-norm distance between the exact and structured inverse
    double bound; ///< applicable certified bound at the matrix extremes
    double ratio; ///< error / bound
};

inline ErrorSummary approx_error(const BalancedMatrix& t) {
    const double err =
        sup_norm(subtract(exact_inverse(t), to_dense(build_approx(t))));
    const Extremes ex = extremes(t);
    const double bound = error_bound(ex.min_entry, ex.max_entry, t.size()).bound;
    return {err, bound, err / bound};
}

inline ErrorSummary approx_error(const DominantMatrix& t) {
    const double err =
        sup_norm(subtract(exact_inverse(t), to_dense(build_approx(t))));
    const Extremes ex = extremes(t);
    const double bound =
        dominant_error_bound(ex.min_entry, ex.max_entry, t.size());
    return {err, bound, err / bound};
}

} // namespace balinv
