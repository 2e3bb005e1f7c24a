#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "balinv/rng.hpp"

namespace balinv {

namespace detail {

// Packed storage for the strict upper triangle of a symmetric matrix,
// row-major over pairs (i, j) with i < j.
class OffDiagonal {
public:
    OffDiagonal() = default;

    OffDiagonal(std::size_t n, std::vector<double> entries)
        : n_(n), entries_(std::move(entries)) {
        if (entries_.size() != pair_count(n_))
            throw std::invalid_argument(
                "off-diagonal entry count must be n(n-1)/2, got " +
                std::to_string(entries_.size()));
        for (double t : entries_) {
            if (!std::isfinite(t))
                throw std::invalid_argument("nonfinite off-diagonal entry");
            if (t <= 0.0)
                throw std::invalid_argument("nonpositive off-diagonal entry");
        }
    }

    static constexpr std::size_t pair_count(std::size_t n) noexcept {
        return n * (n - 1) / 2;
    }

    std::size_t index(std::size_t i, std::size_t j) const noexcept {
        if (i > j) {
            const std::size_t t = i;
            i = j;
            j = t;
        }
        return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
    }

    double operator()(std::size_t i, std::size_t j) const noexcept {
        return entries_[index(i, j)];
    }

    double row_sum(std::size_t i) const noexcept {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j)
            if (j != i) s += entries_[index(i, j)];
        return s;
    }

    // Sum over ordered pairs (i, j), i != j: twice the packed total.
    double ordered_sum() const noexcept {
        double s = 0.0;
        for (double t : entries_) s += t;
        return 2.0 * s;
    }

    const std::vector<double>& packed() const noexcept { return entries_; }
    std::size_t size() const noexcept { return n_; }

private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

inline void check_dimension(std::size_t n, std::size_t minimum) {
    if (n < minimum)
        throw std::invalid_argument("dimension must be at least " +
                                    std::to_string(minimum) + ", got " +
                                    std::to_string(n));
}

inline void check_vector_length(std::size_t got, std::size_t want) {
    if (got != want)
        throw std::invalid_argument("vector length " + std::to_string(got) +
                                    " does not match dimension " +
                                    std::to_string(want));
}

} // namespace detail

/// Symmetric matrix with positive off-diagonals whose diagonal entries equal
/// their off-diagonal row sums. The off-diagonals are the stored data; the
/// diagonal is derived at construction so the row-sum property cannot drift.
class BalancedMatrix {
public:
    BalancedMatrix(std::size_t n, std::vector<double> off_diagonals)
        : off_(n, std::move(off_diagonals)) {
        detail::check_dimension(n, 3);
        diag_.resize(n);
        for (std::size_t i = 0; i < n; ++i) diag_[i] = off_.row_sum(i);
    }

    std::size_t size() const noexcept { return off_.size(); }

    /// Off-diagonal coupling, i != j.
    double off(std::size_t i, std::size_t j) const noexcept { return off_(i, j); }

    double diag(std::size_t i) const noexcept { return diag_[i]; }
    const std::vector<double>& diagonal() const noexcept { return diag_; }

    double entry(std::size_t i, std::size_t j) const noexcept {
        return i == j ? diag_[i] : off_(i, j);
    }

    const std::vector<double>& packed_off_diagonals() const noexcept {
        return off_.packed();
    }

    const detail::OffDiagonal& off_diagonals() const noexcept { return off_; }

private:
    detail::OffDiagonal off_;
    std::vector<double> diag_;
};

/// Symmetric matrix with positive off-diagonals and per-row diagonal slack:
/// each diagonal entry is the off-diagonal row sum plus a nonnegative excess.
class DominantMatrix {
public:
    DominantMatrix(std::size_t n, std::vector<double> off_diagonals,
                   std::vector<double> slacks)
        : off_(n, std::move(off_diagonals)), slack_(std::move(slacks)) {
        detail::check_dimension(n, 3);
        detail::check_vector_length(slack_.size(), n);
        for (double s : slack_) {
            if (!std::isfinite(s) || s < 0.0)
                throw std::invalid_argument("negative or nonfinite slack");
        }
        diag_.resize(n);
        for (std::size_t i = 0; i < n; ++i) diag_[i] = off_.row_sum(i) + slack_[i];
    }

    std::size_t size() const noexcept { return off_.size(); }

    double off(std::size_t i, std::size_t j) const noexcept { return off_(i, j); }
    double diag(std::size_t i) const noexcept { return diag_[i]; }
    const std::vector<double>& diagonal() const noexcept { return diag_; }
    double slack(std::size_t i) const noexcept { return slack_[i]; }
    const std::vector<double>& slacks() const noexcept { return slack_; }

    double entry(std::size_t i, std::size_t j) const noexcept {
        return i == j ? diag_[i] : off_(i, j);
    }

    const std::vector<double>& packed_off_diagonals() const noexcept {
        return off_.packed();
    }

    const detail::OffDiagonal& off_diagonals() const noexcept { return off_; }

private:
    detail::OffDiagonal off_;
    std::vector<double> slack_;
    std::vector<double> diag_;
};

/// Smallest and largest coupling values of a matrix. For a DominantMatrix the
/// upper value also covers the diagonal slacks.
struct Extremes {
    double min_entry;
    double max_entry;
};

inline BalancedMatrix from_off_diagonals(std::size_t n,
                                         std::vector<double> entries) {
    return BalancedMatrix(n, std::move(entries));
}

inline DominantMatrix from_dominant(std::size_t n, std::vector<double> entries,
                                    std::vector<double> slacks) {
    return DominantMatrix(n, std::move(entries), std::move(slacks));
}

inline Extremes extremes(const BalancedMatrix& t) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double v : t.packed_off_diagonals()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

inline Extremes extremes(const DominantMatrix& t) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double v : t.packed_off_diagonals()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (double s : t.slacks()) hi = std::max(hi, s);
    return {lo, hi};
}

/// Sum of all off-diagonal entries over ordered pairs. For a BalancedMatrix
/// this equals the trace.
template <typename MatrixT>
double total_mass(const MatrixT& t) {
    return t.off_diagonals().ordered_sum();
}

/// Dense product y = T x.
template <typename MatrixT>
std::vector<double> matvec(const MatrixT& t, std::span<const double> x) {
    const std::size_t n = t.size();
    detail::check_vector_length(x.size(), n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = t.diag(i) * x[i];
    const std::vector<double>& packed = t.packed_off_diagonals();
    std::size_t k = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++k) {
            const double v = packed[k];
            y[i] += v * x[j];
            y[j] += v * x[i];
        }
    }
    return y;
}

/// Balanced matrix with off-diagonals drawn independently uniform on
/// [min_entry, max_entry]; identical seeds give identical matrices.
inline BalancedMatrix random_balanced(std::size_t n, double min_entry,
                                      double max_entry, std::uint64_t seed) {
    detail::check_dimension(n, 3);
    if (!(min_entry > 0.0) || !(min_entry <= max_entry))
        throw std::invalid_argument("entry range requires 0 < min <= max");
    SplitMix64 gen(seed);
    std::vector<double> entries(detail::OffDiagonal::pair_count(n));
    for (double& e : entries) e = gen.uniform(min_entry, max_entry);
    return BalancedMatrix(n, std::move(entries));
}

/// Family with one light row: every coupling equals min_entry, rows except the
/// last carry diagonal (n-1)*max_entry, the last carries (n-1)*min_entry.
/// Diagonally dominant, with zero slack only in the last row.
inline DominantMatrix worst_case_family(std::size_t n, double min_entry,
                                        double max_entry) {
    detail::check_dimension(n, 4);
    if (!(min_entry > 0.0) || !(min_entry <= max_entry))
        throw std::invalid_argument("entry range requires 0 < min <= max");
    std::vector<double> entries(detail::OffDiagonal::pair_count(n), min_entry);
    std::vector<double> slacks(n, static_cast<double>(n - 1) * (max_entry - min_entry));
    slacks[n - 1] = 0.0;
    return DominantMatrix(n, std::move(entries), std::move(slacks));
}

} // namespace balinv
