#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "balinv/approx_inverse.hpp"
#include "balinv/matrix.hpp"
#include "balinv/pcg.hpp"
#include "balinv/rng.hpp"

namespace balinv {

/// Node parameters of the undirected random-graph model in which edge (i, j)
/// appears independently with probability logistic(beta_i + beta_j).
struct BetaParams {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
};

/// Observed (or synthetic) degree vector. Entries may be fractional when the
/// sequence comes from expected degrees rather than a sampled graph; integer
/// sequences must have even total (every edge contributes two endpoints).
class DegreeSequence {
public:
    explicit DegreeSequence(std::vector<double> degrees)
        : d_(std::move(degrees)) {
        const double cap = static_cast<double>(d_.size()) - 1.0;
        bool integral = true;
        double sum = 0.0;
        for (double v : d_) {
            if (!std::isfinite(v) || v < 0.0 || v > cap)
                throw std::invalid_argument(
                    "degree entries must lie in [0, n-1]");
            if (v != std::floor(v)) integral = false;
            sum += v;
        }
        if (integral && std::fmod(sum, 2.0) != 0.0)
            throw std::invalid_argument("integer degree sum must be even");
    }

    std::size_t size() const noexcept { return d_.size(); }
    double operator[](std::size_t i) const noexcept { return d_[i]; }
    const std::vector<double>& values() const noexcept { return d_; }

private:
    std::vector<double> d_;
};

namespace detail {

// Overflow-safe logistic pair: p = logistic(x) and its complement, each
// accurate to relative rounding even for large |x|.
struct LogisticPair {
    double p;
    double q; // 1 - p computed without cancellation
};

inline LogisticPair logistic_pair(double x) {
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return {1.0 / (1.0 + e), e / (1.0 + e)};
    }
    const double e = std::exp(x);
    return {e / (1.0 + e), 1.0 / (1.0 + e)};
}

inline double edge_variance(double bi, double bj) {
    const LogisticPair lp = logistic_pair(bi + bj);
    return lp.p * lp.q;
}

} // namespace detail

/// Fisher information of the degree statistics: coupling (i, j) is the edge
/// variance p_ij (1 - p_ij), and the diagonal is the corresponding row sum,
/// so the result is balanced by construction.
inline BalancedMatrix fisher_information(const BetaParams& beta) {
    const std::size_t n = beta.size();
    detail::check_dimension(n, 3);
    std::vector<double> entries;
    entries.reserve(detail::OffDiagonal::pair_count(n));
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            entries.push_back(
                detail::edge_variance(beta.values[i], beta.values[j]));
    return BalancedMatrix(n, std::move(entries));
}

/// Mean degree of each node under the model.
inline std::vector<double> expected_degrees(const BetaParams& beta) {
    const std::size_t n = beta.size();
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            e[i] += detail::logistic_pair(beta.values[i] + beta.values[j]).p;
        }
    }
    return e;
}

/// Draw one graph and return its degree vector; identical seeds give
/// identical samples. The total is always even.
inline DegreeSequence sample_degrees(const BetaParams& beta,
                                     std::uint64_t seed) {
    const std::size_t n = beta.size();
    SplitMix64 gen(seed);
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p =
                detail::logistic_pair(beta.values[i] + beta.values[j]).p;
            if (gen.next_double() < p) {
                d[i] += 1.0;
                d[j] += 1.0;
            }
        }
    }
    return DegreeSequence(std::move(d));
}

struct FitResult {
    BetaParams estimate;
    SolveReport report;
};

/// Quasi-Newton fit of the maximum-likelihood parameters from a degree
/// sequence. Each step applies the damped structured inverse of the current
/// Fisher information (damping 1 - 1/n) to the moment residual, so no linear
/// system is ever solved. Requires interior degrees: at 0 or n-1 the
/// likelihood has no finite maximizer.
inline FitResult fit_mle(const DegreeSequence& degrees, double tol,
                         std::size_t max_iter) {
    const std::size_t n = degrees.size();
    detail::check_dimension(n, 3);
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const double cap = static_cast<double>(n) - 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(degrees[i] > 0.0) || !(degrees[i] < cap))
            throw std::invalid_argument(
                "MLE may not exist: degree sequence touches the boundary");
    }

    FitResult out;
    out.estimate.values.assign(n, 0.0);
    const double theta = 1.0 - 1.0 / static_cast<double>(n);
    std::vector<double> residual(n);

    for (std::size_t it = 0; it <= max_iter; ++it) {
        const std::vector<double> expected = expected_degrees(out.estimate);
        double sup = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            residual[i] = expected[i] - degrees[i];
            sup = std::max(sup, std::abs(residual[i]));
        }
        out.report.residuals.push_back(sup);
        out.report.iterations = it;
        if (sup <= tol) {
            out.report.converged = true;
            return out;
        }
        if (it == max_iter) break;
        const StructuredInverse s = build_approx(fisher_information(out.estimate));
        const std::vector<double> step = make_damped(s, theta).apply(residual);
        for (std::size_t i = 0; i < n; ++i) out.estimate.values[i] -= step[i];
    }
    return out;
}

} // namespace balinv
