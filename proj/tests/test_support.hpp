#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "balinv/balinv.hpp"

namespace test_support {

// Sup-norm difference relative to the larger of the two matrices. Entrywise
// relative comparison is ill-posed where entries cancel toward zero, so all
// closed-form/numeric agreements are measured against the matrix scale.
inline double scaled_sup_diff(const balinv::DenseMatrix& a,
                              const balinv::DenseMatrix& b) {
    const double scale = std::max(balinv::sup_norm(a), balinv::sup_norm(b));
    return balinv::sup_norm(balinv::subtract(a, b)) / scale;
}

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed,
                                         double lo = -1.0, double hi = 1.0) {
    balinv::SplitMix64 gen(seed);
    std::vector<double> v(n);
    for (double& x : v) x = gen.uniform(lo, hi);
    return v;
}

inline double sup_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double rel_sup_diff(const std::vector<double>& got,
                           const std::vector<double>& want) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        num = std::max(num, std::abs(got[i] - want[i]));
        den = std::max(den, std::abs(want[i]));
    }
    return num / den;
}

template <typename ExceptionT>
bool throws_with(const std::function<void()>& f, const std::string& fragment) {
    try {
        f();
    } catch (const ExceptionT& e) {
        return std::string(e.what()).find(fragment) != std::string::npos;
    } catch (...) {
        return false;
    }
    return false;
}

} // namespace test_support
