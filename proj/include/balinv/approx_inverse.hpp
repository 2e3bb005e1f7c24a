#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "balinv/dense_matrix.hpp"
#include "balinv/matrix.hpp"

namespace balinv {

/// Structured approximation of the inverse of a balanced (or diagonally
/// dominant) matrix: the reciprocal of the diagonal minus a constant rank-one
/// correction of one over the total off-diagonal mass on every entry.
/// O(n) storage, O(n) application.
class StructuredInverse {
public:
    StructuredInverse(std::vector<double> diag_recip, double mass)
        : diag_recip_(std::move(diag_recip)), mass_(mass) {}

    std::size_t size() const noexcept { return diag_recip_.size(); }

    double diag_recip(std::size_t i) const noexcept { return diag_recip_[i]; }
    const std::vector<double>& diag_reciprocals() const noexcept {
        return diag_recip_;
    }
    double mass() const noexcept { return mass_; }

    double entry(std::size_t i, std::size_t j) const noexcept {
        return (i == j ? diag_recip_[i] : 0.0) - 1.0 / mass_;
    }

private:
    std::vector<double> diag_recip_;
    double mass_;
};

template <typename MatrixT>
StructuredInverse build_approx(const MatrixT& t) {
    const std::size_t n = t.size();
    std::vector<double> recip(n);
    for (std::size_t i = 0; i < n; ++i) recip[i] = 1.0 / t.diag(i);
    return StructuredInverse(std::move(recip), total_mass(t));
}

/// y_i = x_i / t_ii - (sum_k x_k) / mass. For a balanced source this maps the
/// diagonal vector to zero exactly (the rank-one term eats it).
inline std::vector<double> apply_approx(const StructuredInverse& s,
                                        std::span<const double> x) {
    const std::size_t n = s.size();
    detail::check_vector_length(x.size(), n);
    double sum = 0.0;
    for (double v : x) sum += v;
    const double shift = sum / s.mass();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] * s.diag_recip(i) - shift;
    return y;
}

inline DenseMatrix to_dense(const StructuredInverse& s) {
    const std::size_t n = s.size();
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = s.entry(i, j);
    return m;
}

/// Certified sup-norm bound on the approximation error of the structured
/// inverse for a balanced matrix with couplings in [min_entry, max_entry].
struct BoundReport {
    double min_entry;
    double max_entry;
    std::size_t n;
    double c_term;       ///< leading constant of the bound
    double bound;        ///< total bound: c_term/(n-1)^2 + 1/(2*min*(n-1)^2)
    double residual_cap; ///< cap on smoothing-residual entries, max/(min^2 (n-1)^2)
};

inline BoundReport error_bound(double min_entry, double max_entry,
                               std::size_t n) {
    if (n < 3)
        throw std::invalid_argument("error bound requires dimension >= 3");
    if (!(min_entry > 0.0) || !(min_entry <= max_entry) ||
        !std::isfinite(max_entry))
        throw std::invalid_argument("entry range requires 0 < min <= max");
    const double nn = static_cast<double>(n);
    const double gap = (nn - 1.0) * (nn - 1.0);
    const double c_term = (max_entry / (min_entry * min_entry)) *
                          (nn * max_entry + (nn - 2.0) * min_entry) /
                          (2.0 * (nn - 2.0) * min_entry);
    const double bound = c_term / gap + 1.0 / (2.0 * min_entry * gap);
    const double cap = max_entry / (min_entry * min_entry * gap);
    return {min_entry, max_entry, n, c_term, bound, cap};
}

/// Extension of the bound to diagonally dominant matrices, valid only where
/// the bracketed coefficient below stays positive (large n with modest
/// max/min ratio). max_entry must already cover the diagonal slacks.
inline double dominant_error_bound(double min_entry, double max_entry,
                                   std::size_t n) {
    if (n < 3)
        throw std::invalid_argument("extension bound requires dimension >= 3");
    if (!(min_entry > 0.0) || !(min_entry <= max_entry) ||
        !std::isfinite(max_entry))
        throw std::invalid_argument("entry range requires 0 < min <= max");
    const double m = min_entry;
    const double M = max_entry;
    const double nn = static_cast<double>(n);
    const double bracket =
        2.0 * (nn - 2.0) * m / (nn * M + (nn - 2.0) * m) -
        M / (m * (nn - 1.0)) -
        (nn - 2.0) * M * m /
            (((nn - 2.0) * m + M) * ((nn - 2.0) * m + 2.0 * M));
    if (!(bracket > 0.0))
        throw std::invalid_argument("extension bound inapplicable at this n");
    const double gap = (nn - 1.0) * (nn - 1.0);
    return (1.0 / gap) * (1.0 / bracket) *
               (M / (m * m) + 4.0 * M / (m * m * nn)) +
           1.0 / (m * nn * (nn - 1.0));
}

/// Closed form of I - T*S for a balanced matrix. Entry (i, j) is
/// -t_ij/t_jj off the diagonal plus 2*t_ii/mass on every entry of row i.
inline DenseMatrix inverse_residual(const BalancedMatrix& t) {
    const std::size_t n = t.size();
    const double mass = total_mass(t);
    DenseMatrix v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double row_term = 2.0 * t.diag(i) / mass;
        for (std::size_t j = 0; j < n; ++j)
            v(i, j) = (i == j ? 0.0 : -t.off(i, j) / t.diag(j)) + row_term;
    }
    return v;
}

/// Closed form of S*(I - T*S) for a balanced matrix. Entry (i, j) is
/// -t_ij/(t_ii t_jj) off the diagonal plus 1/mass everywhere.
inline DenseMatrix correction_residual(const BalancedMatrix& t) {
    const std::size_t n = t.size();
    const double recip_mass = 1.0 / total_mass(t);
    DenseMatrix w(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            w(i, j) = (i == j ? 0.0 : -t.off(i, j) / (t.diag(i) * t.diag(j))) +
                      recip_mass;
    }
    return w;
}

/// Gain factor of the alternating split used to certify the bound, evaluated
/// at split size lambda in [1, n-1]. Constant 1/(n-1) when the coupling range
/// collapses; otherwise strictly concave in lambda with maximum at n/2.
inline double contraction_factor(double lambda, std::size_t n,
                                 double min_entry, double max_entry) {
    if (n < 3)
        throw std::invalid_argument("contraction factor requires dimension >= 3");
    if (!(min_entry > 0.0) || !(min_entry <= max_entry))
        throw std::invalid_argument("entry range requires 0 < min <= max");
    const double nn = static_cast<double>(n);
    if (!(lambda >= 1.0) || !(lambda <= nn - 1.0))
        throw std::invalid_argument("lambda out of [1, n-1]");
    if (min_entry == max_entry) return 1.0 / (nn - 1.0);
    const double m = min_entry;
    const double M = max_entry;
    return lambda * M / (lambda * M + (nn - 1.0 - lambda) * m) -
           (lambda - 1.0) * m / ((lambda - 1.0) * m + (nn - lambda) * M);
}

} // namespace balinv
