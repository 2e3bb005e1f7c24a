#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "balinv/io.hpp"
#include "balinv/matrix.hpp"
#include "balinv/oracle.hpp"
#include "balinv/rng.hpp"

namespace balinv {

// Dense oracles are held to desk scale; beyond this only O(n) paths apply.
inline constexpr std::size_t kDenseOracleLimit = 500;

/// One line of an error scan: oracle error statistics over `trials` random
/// balanced matrices of dimension n against the certified bound.
struct ExperimentRow {
    std::size_t n;
    double min_entry;
    double max_entry;
    std::size_t trials;
    double mean_error;
    double max_error;
    double bound;
    double max_ratio;
    std::uint64_t seed;
};

struct WorstCaseRow {
    std::size_t n;
    double scaled_error; ///< (n-1)^2 times the oracle error
    double target;       ///< 1 / min_entry
};

/// Seed of one (n, trial) cell, derived so that any execution order of the
/// trials reproduces the same matrices.
inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t n,
                                std::size_t trial) {
    return derive_seed(seed, n, trial);
}

namespace detail {

inline void check_scan_dimensions(std::span<const std::size_t> dims,
                                  std::size_t minimum) {
    if (dims.empty()) throw std::invalid_argument("empty dimension list");
    for (std::size_t n : dims) {
        if (n < minimum)
            throw std::invalid_argument("scan dimension must be at least " +
                                        std::to_string(minimum));
        if (n > kDenseOracleLimit)
            throw std::invalid_argument(
                "scan dimension exceeds the dense-oracle limit of " +
                std::to_string(kDenseOracleLimit));
    }
}

} // namespace detail

inline std::vector<ExperimentRow> error_scan(std::span<const std::size_t> dims,
                                             double min_entry, double max_entry,
                                             std::size_t trials,
                                             std::uint64_t seed) {
    detail::check_scan_dimensions(dims, 3);
    if (trials == 0) throw std::invalid_argument("at least one trial required");
    if (!(min_entry > 0.0) || !(min_entry <= max_entry))
        throw std::invalid_argument("entry range requires 0 < min <= max");

    std::vector<ExperimentRow> rows;
    rows.reserve(dims.size());
    for (std::size_t n : dims) {
        const double bound = error_bound(min_entry, max_entry, n).bound;
        double sum = 0.0;
        double worst = 0.0;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const BalancedMatrix t = random_balanced(
                n, min_entry, max_entry, trial_seed(seed, n, trial));
            const double err = sup_norm(
                subtract(exact_inverse(t), to_dense(build_approx(t))));
            sum += err;
            worst = std::max(worst, err);
        }
        rows.push_back({n, min_entry, max_entry, trials,
                        sum / static_cast<double>(trials), worst, bound,
                        worst / bound, seed});
    }
    return rows;
}

/// Least-squares slope of log(mean error) against log(n-1) over an error
/// scan. Duplicate dimensions are filtered; at least four distinct values
/// are required for a meaningful fit. Optionally hands back the scan rows.
inline double rate_fit(std::span<const std::size_t> dims, double min_entry,
                       double max_entry, std::size_t trials, std::uint64_t seed,
                       std::vector<ExperimentRow>* rows_out = nullptr) {
    std::vector<std::size_t> distinct(dims.begin(), dims.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    if (distinct.size() < 4)
        throw std::invalid_argument(
            "rate fit requires at least 4 distinct dimensions");

    const std::vector<ExperimentRow> rows =
        error_scan(distinct, min_entry, max_entry, trials, seed);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const ExperimentRow& r : rows) {
        const double x = std::log(static_cast<double>(r.n - 1));
        const double y = std::log(r.mean_error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double count = static_cast<double>(rows.size());
    if (rows_out) *rows_out = rows;
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

/// Scaled oracle error (n-1)^2 * error of the light-row family, against the
/// asymptotic target 1/min_entry.
inline std::vector<WorstCaseRow> worst_case_scan(
    std::span<const std::size_t> dims, double min_entry, double max_entry) {
    detail::check_scan_dimensions(dims, 4);
    if (!(min_entry > 0.0) || !(min_entry <= max_entry))
        throw std::invalid_argument("entry range requires 0 < min <= max");

    std::vector<WorstCaseRow> rows;
    rows.reserve(dims.size());
    for (std::size_t n : dims) {
        const DominantMatrix t = worst_case_family(n, min_entry, max_entry);
        const double err =
            sup_norm(subtract(exact_inverse(t), to_dense(build_approx(t))));
        const double gap = static_cast<double>(n - 1) * static_cast<double>(n - 1);
        rows.push_back({n, gap * err, 1.0 / min_entry});
    }
    return rows;
}

inline std::string to_csv(const std::vector<ExperimentRow>& rows) {
    std::string out = "n,m,M,trials,mean_error,max_error,bound,max_ratio,seed\n";
    for (const ExperimentRow& r : rows) {
        out += std::to_string(r.n) + ',';
        out += detail::format_double(r.min_entry) + ',';
        out += detail::format_double(r.max_entry) + ',';
        out += std::to_string(r.trials) + ',';
        out += detail::format_double(r.mean_error) + ',';
        out += detail::format_double(r.max_error) + ',';
        out += detail::format_double(r.bound) + ',';
        out += detail::format_double(r.max_ratio) + ',';
        out += std::to_string(r.seed) + '\n';
    }
    return out;
}

inline std::string to_csv(const std::vector<WorstCaseRow>& rows) {
    std::string out = "n,scaled_error,target\n";
    for (const WorstCaseRow& r : rows) {
        out += std::to_string(r.n) + ',';
        out += detail::format_double(r.scaled_error) + ',';
        out += detail::format_double(r.target) + '\n';
    }
    return out;
}

} // namespace balinv
