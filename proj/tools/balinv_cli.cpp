// Benchmark and solver driver for the structured-inverse library.
//
// Subcommands:
//   error-scan  oracle error vs certified bound over random balanced matrices
//   rate-fit    log-log slope of the mean error against n-1
//   worst-case  scaled error of the light-row family against 1/m
//   solve       preconditioned conjugate-gradient solve of T x = b
//   beta-fit    degree-sequence maximum-likelihood fit
//
// All randomness comes from SplitMix64 streams keyed by --seed (64-bit
// unsigned); per-trial seeds are derived from (seed, n, trial), so output is
// reproducible byte for byte regardless of execution order.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "balinv/balinv.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitNotConverged = 2;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + out_path + "'");
    out << text;
}

balinv::AnyMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file '" + path + "'");
    return balinv::read_matrix(in);
}

std::vector<double> load_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open vector file '" + path + "'");
    return balinv::read_vector(in);
}

void print_vector(const char* label, const std::vector<double>& v) {
    std::cout << label << ':';
    for (double x : v) std::cout << ' ' << balinv::detail::format_double(x);
    std::cout << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"structured approximate inverses of balanced symmetric "
                 "matrices: benchmarks, solves, and model fits"};
    app.require_subcommand(1);

    std::vector<std::size_t> dims;
    double min_entry = 1.0;
    double max_entry = 1.0;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::string out_path;

    auto add_scan_options = [&](CLI::App* cmd, bool with_trials) {
        cmd->add_option("--n", dims, "comma-separated list of dimensions")
            ->required()
            ->delimiter(',');
        cmd->add_option("--m", min_entry, "smallest off-diagonal entry")
            ->required();
        cmd->add_option("--M", max_entry, "largest off-diagonal entry")
            ->required();
        if (with_trials) {
            cmd->add_option("--trials", trials, "random matrices per dimension")
                ->default_val(std::size_t{1});
            cmd->add_option("--seed", seed, "64-bit seed of the SplitMix64 stream")
                ->default_val(std::uint64_t{0});
        }
        cmd->add_option("--out", out_path,
                        "write CSV here instead of standard output");
    };

    CLI::App* scan = app.add_subcommand(
        "error-scan", "oracle error statistics against the certified bound");
    add_scan_options(scan, true);

    CLI::App* rate = app.add_subcommand(
        "rate-fit", "least-squares slope of log(mean error) vs log(n-1)");
    add_scan_options(rate, true);

    CLI::App* worst = app.add_subcommand(
        "worst-case", "scaled error of the light-row family against 1/m");
    add_scan_options(worst, false);

    std::string matrix_path;
    std::string rhs_path;
    std::string pre_kind = "damped-s";
    double tol = 1e-10;
    std::size_t max_iter = 0;

    CLI::App* solve = app.add_subcommand(
        "solve", "conjugate-gradient solve of T x = b from text files");
    solve->add_option("matrix", matrix_path, "matrix file")->required();
    solve->add_option("rhs", rhs_path, "right-hand-side file")->required();
    solve->add_option("--pre", pre_kind, "preconditioner")
        ->check(CLI::IsMember({"none", "jacobi", "damped-s"}))
        ->default_val(std::string{"damped-s"});
    solve->add_option("--tol", tol, "relative residual tolerance")
        ->default_val(1e-10);
    solve->add_option("--max-iter", max_iter,
                      "iteration cap (0 means 4n)")
        ->default_val(std::size_t{0});

    std::string degrees_path;
    double fit_tol = 1e-8;
    std::size_t fit_max_iter = 500;

    CLI::App* beta = app.add_subcommand(
        "beta-fit", "maximum-likelihood fit from a degree sequence");
    beta->add_option("degrees", degrees_path,
                     "file of whitespace-separated degrees")
        ->required();
    beta->add_option("--tol", fit_tol, "sup-norm tolerance on the moments")
        ->default_val(1e-8);
    beta->add_option("--max-iter", fit_max_iter, "iteration cap")
        ->default_val(std::size_t{500});

    CLI11_PARSE(app, argc, argv);

    try {
        if (*scan) {
            emit(balinv::to_csv(
                     balinv::error_scan(dims, min_entry, max_entry, trials, seed)),
                 out_path);
            return 0;
        }
        if (*rate) {
            std::vector<balinv::ExperimentRow> rows;
            const double slope = balinv::rate_fit(dims, min_entry, max_entry,
                                                  trials, seed, &rows);
            if (!out_path.empty()) emit(balinv::to_csv(rows), out_path);
            std::cout << "slope: " << balinv::detail::format_double(slope)
                      << '\n';
            return 0;
        }
        if (*worst) {
            emit(balinv::to_csv(
                     balinv::worst_case_scan(dims, min_entry, max_entry)),
                 out_path);
            return 0;
        }
        if (*solve) {
            const balinv::AnyMatrix matrix = load_matrix(matrix_path);
            const std::vector<double> rhs = load_vector(rhs_path);
            const auto run = [&](const auto& t) {
                balinv::Preconditioner pre = balinv::Preconditioner::identity();
                if (pre_kind == "jacobi") {
                    pre = balinv::Preconditioner::jacobi(t);
                } else if (pre_kind == "damped-s") {
                    const double theta =
                        1.0 - 1.0 / static_cast<double>(t.size());
                    pre = balinv::make_damped(balinv::build_approx(t), theta);
                }
                return balinv::pcg(t, rhs, pre, tol, max_iter);
            };
            const balinv::SolveResult result = std::visit(run, matrix);
            print_vector("x", result.solution);
            std::cout << "iterations: " << result.report.iterations << '\n';
            std::cout << "converged: "
                      << (result.report.converged ? "yes" : "no") << '\n';
            return result.report.converged ? 0 : kExitNotConverged;
        }
        if (*beta) {
            std::ifstream in(degrees_path);
            if (!in)
                throw std::runtime_error("cannot open degrees file '" +
                                         degrees_path + "'");
            balinv::DegreeSequence degrees(balinv::read_vector(in));
            const balinv::FitResult fit =
                balinv::fit_mle(degrees, fit_tol, fit_max_iter);
            print_vector("beta", fit.estimate.values);
            std::cout << "iterations: " << fit.report.iterations << '\n';
            std::cout << "converged: " << (fit.report.converged ? "yes" : "no")
                      << '\n';
            return fit.report.converged ? 0 : kExitNotConverged;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return 0;
}
