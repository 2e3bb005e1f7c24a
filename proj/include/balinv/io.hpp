#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "balinv/matrix.hpp"

namespace balinv {

using AnyMatrix = std::variant<BalancedMatrix, DominantMatrix>;

namespace detail {

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& token, const char* what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("malformed ") + what +
                                    " value '" + token + "'");
    }
    if (pos != token.size())
        throw std::invalid_argument(std::string("malformed ") + what +
                                    " value '" + token + "'");
    return v;
}

} // namespace detail

/// Text format: first line the dimension n, then n(n-1)/2 off-diagonal
/// entries in row-major (i < j) order, optionally followed by n diagonal
/// slack values. With the slack block present the matrix is read as
/// diagonally dominant, otherwise as balanced.
inline AnyMatrix read_matrix(std::istream& in) {
    long long n_raw = 0;
    if (!(in >> n_raw) || n_raw < 3)
        throw std::invalid_argument("matrix file must start with a dimension >= 3");
    const std::size_t n = static_cast<std::size_t>(n_raw);

    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);

    const std::size_t pairs = detail::OffDiagonal::pair_count(n);
    if (tokens.size() != pairs && tokens.size() != pairs + n)
        throw std::invalid_argument(
            "matrix file must carry n(n-1)/2 off-diagonal entries, "
            "optionally followed by n slack values");

    std::vector<double> entries(pairs);
    for (std::size_t k = 0; k < pairs; ++k)
        entries[k] = detail::parse_double(tokens[k], "off-diagonal");
    if (tokens.size() == pairs) return BalancedMatrix(n, std::move(entries));

    std::vector<double> slacks(n);
    for (std::size_t k = 0; k < n; ++k)
        slacks[k] = detail::parse_double(tokens[pairs + k], "slack");
    return DominantMatrix(n, std::move(entries), std::move(slacks));
}

inline void write_matrix(std::ostream& out, const BalancedMatrix& t) {
    out << t.size() << '\n';
    const std::vector<double>& packed = t.packed_off_diagonals();
    for (std::size_t k = 0; k < packed.size(); ++k)
        out << detail::format_double(packed[k])
            << (k + 1 == packed.size() ? '\n' : ' ');
}

inline void write_matrix(std::ostream& out, const DominantMatrix& t) {
    out << t.size() << '\n';
    const std::vector<double>& packed = t.packed_off_diagonals();
    for (std::size_t k = 0; k < packed.size(); ++k)
        out << detail::format_double(packed[k])
            << (k + 1 == packed.size() ? '\n' : ' ');
    for (std::size_t i = 0; i < t.size(); ++i)
        out << detail::format_double(t.slack(i))
            << (i + 1 == t.size() ? '\n' : ' ');
}

/// Whitespace-separated real values, all of them.
inline std::vector<double> read_vector(std::istream& in) {
    std::vector<double> v;
    std::string tok;
    while (in >> tok) v.push_back(detail::parse_double(tok, "vector"));
    return v;
}

} // namespace balinv
