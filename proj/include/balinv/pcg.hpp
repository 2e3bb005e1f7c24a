#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "balinv/approx_inverse.hpp"
#include "balinv/matrix.hpp"

namespace balinv {

/// Convergence record of an iterative solve.
struct SolveReport {
    std::size_t iterations = 0;
    std::vector<double> residuals; ///< relative residual after each iteration
    bool converged = false;
};

enum class PreconditionerKind { none, jacobi, damped };

/// Applies one of three O(n) operators inside the conjugate gradient loop:
/// the identity, the diagonal reciprocal, or the damped structured inverse
/// D^-1 - theta/mass * (all-ones). The damping keeps the operator positive
/// definite; the undamped structured inverse annihilates the diagonal vector
/// and cannot serve as a preconditioner on its own.
class Preconditioner {
public:
    static Preconditioner identity() { return Preconditioner(); }

    template <typename MatrixT>
    static Preconditioner jacobi(const MatrixT& t) {
        Preconditioner p;
        p.kind_ = PreconditionerKind::jacobi;
        p.diag_recip_.resize(t.size());
        for (std::size_t i = 0; i < t.size(); ++i)
            p.diag_recip_[i] = 1.0 / t.diag(i);
        return p;
    }

    PreconditionerKind kind() const noexcept { return kind_; }
    double theta() const noexcept { return theta_; }

    void apply(std::span<const double> r, std::span<double> z) const {
        const std::size_t n = r.size();
        switch (kind_) {
        case PreconditionerKind::none:
            for (std::size_t i = 0; i < n; ++i) z[i] = r[i];
            break;
        case PreconditionerKind::jacobi:
            detail::check_vector_length(n, diag_recip_.size());
            for (std::size_t i = 0; i < n; ++i) z[i] = r[i] * diag_recip_[i];
            break;
        case PreconditionerKind::damped: {
            detail::check_vector_length(n, diag_recip_.size());
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += r[i];
            const double shift = theta_ * sum / mass_;
            for (std::size_t i = 0; i < n; ++i)
                z[i] = r[i] * diag_recip_[i] - shift;
            break;
        }
        }
    }

    std::vector<double> apply(std::span<const double> r) const {
        std::vector<double> z(r.size());
        apply(r, z);
        return z;
    }

private:
    friend Preconditioner make_damped(const StructuredInverse&, double);

    PreconditionerKind kind_ = PreconditionerKind::none;
    double theta_ = 0.0;
    double mass_ = 0.0;
    std::vector<double> diag_recip_;
};

/// Damped structured inverse x -> D^-1 x - theta*(sum x)/mass. Positive
/// definite for theta in (0, 1) when the source matrix is balanced.
inline Preconditioner make_damped(const StructuredInverse& s, double theta) {
    if (!(theta > 0.0) || !(theta < 1.0))
        throw std::invalid_argument("damping factor must lie in (0, 1)");
    Preconditioner p;
    p.kind_ = PreconditionerKind::damped;
    p.theta_ = theta;
    p.mass_ = s.mass();
    p.diag_recip_ = s.diag_reciprocals();
    return p;
}

struct SolveResult {
    std::vector<double> solution;
    SolveReport report;
};

namespace detail {

inline double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace detail

/// Left-preconditioned conjugate gradients. Starts from zero, stops when the
/// recursive residual drops below tol * |b|, gives up after max_iter passes
/// (default 4n) and then reports the best iterate with converged = false.
template <typename MatrixT>
SolveResult pcg(const MatrixT& t, std::span<const double> rhs,
                const Preconditioner& pre, double tol,
                std::size_t max_iter = 0) {
    const std::size_t n = t.size();
    detail::check_vector_length(rhs.size(), n);
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (max_iter == 0) max_iter = 4 * n;

    SolveResult out;
    out.solution.assign(n, 0.0);
    const double rhs_norm = detail::norm2(rhs);
    if (rhs_norm == 0.0) {
        out.report.converged = true;
        return out;
    }

    std::vector<double> r(rhs.begin(), rhs.end());
    std::vector<double> z = pre.apply(r);
    std::vector<double> p = z;
    std::vector<double> q(n);
    double rho = detail::dot(r, z);

    for (std::size_t it = 0; it < max_iter; ++it) {
        q = matvec(t, p);
        const double alpha = rho / detail::dot(p, q);
        for (std::size_t i = 0; i < n; ++i) {
            out.solution[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        const double rel = detail::norm2(r) / rhs_norm;
        out.report.residuals.push_back(rel);
        out.report.iterations = it + 1;
        if (rel <= tol) {
            out.report.converged = true;
            return out;
        }
        pre.apply(r, z);
        const double rho_next = detail::dot(r, z);
        const double beta = rho_next / rho;
        rho = rho_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    return out;
}

} // namespace balinv
