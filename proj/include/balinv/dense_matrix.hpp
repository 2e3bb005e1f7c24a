#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "balinv/matrix.hpp"

namespace balinv {

/// Plain square dense matrix, row-major. Desk-scale workhorse for the exact
/// inversion oracle and the residual identities; no attempt at sparsity.
class DenseMatrix {
public:
    DenseMatrix() = default;

    explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t size() const noexcept { return n_; }

    double& operator()(std::size_t i, std::size_t j) noexcept {
        return data_[i * n_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * n_ + j];
    }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Largest absolute entry; the error metric used throughout.
inline double sup_norm(const DenseMatrix& a) {
    double m = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

inline DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("dense dimension mismatch");
    DenseMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

inline DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("dense dimension mismatch");
    DenseMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

// Accumulates in extended precision: the residual identities difference
// quantities that cancel to O(1/n), and plain double dot products would eat
// into the comparison tolerances at n ~ 500.
inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("dense dimension mismatch");
    DenseMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            long double acc = 0.0L;
            for (std::size_t k = 0; k < n; ++k)
                acc += static_cast<long double>(a(i, k)) * b(k, j);
            c(i, j) = static_cast<double>(acc);
        }
    }
    return c;
}

inline std::vector<double> multiply(const DenseMatrix& a,
                                    std::span<const double> x) {
    const std::size_t n = a.size();
    detail::check_vector_length(x.size(), n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        long double acc = 0.0L;
        for (std::size_t j = 0; j < n; ++j)
            acc += static_cast<long double>(a(i, j)) * x[j];
        y[i] = static_cast<double>(acc);
    }
    return y;
}

/// Average a matrix with its transpose in place.
inline void symmetrize(DenseMatrix& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = v;
            a(j, i) = v;
        }
    }
}

template <typename MatrixT>
DenseMatrix to_dense(const MatrixT& t) {
    const std::size_t n = t.size();
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = t.entry(i, j);
    return m;
}

} // namespace balinv
