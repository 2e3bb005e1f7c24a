#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "test_support.hpp"

using namespace balinv;

TEST_CASE("error scan reproduces the n = 3 anchor") {
    const std::vector<std::size_t> dims{3};
    const auto rows = error_scan(dims, 1.0, 1.0, 1, 123);
    REQUIRE(rows.size() == 1);
    const ExperimentRow& r = rows[0];
    CHECK(r.n == 3);
    CHECK(r.trials == 1);
    CHECK(r.max_error == doctest::Approx(5.0 / 12.0).epsilon(1e-12));
    CHECK(r.mean_error == r.max_error);
    CHECK(r.bound == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(r.max_ratio == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("error scan stays under the certified bound") {
    const std::vector<std::size_t> dims{3, 5, 10};
    for (const ExperimentRow& r : error_scan(dims, 0.5, 2.0, 5, 31337)) {
        CHECK(r.max_ratio <= 1.0);
        CHECK(r.mean_error <= r.max_error);
        CHECK(std::isfinite(r.bound));
    }
}

TEST_CASE("scan output is deterministic in the seed") {
    const std::vector<std::size_t> dims{3, 5};
    const std::string a = to_csv(error_scan(dims, 0.5, 2.0, 4, 99));
    const std::string b = to_csv(error_scan(dims, 0.5, 2.0, 4, 99));
    CHECK(a == b);
    CHECK(a.substr(0, a.find('\n')) ==
          "n,m,M,trials,mean_error,max_error,bound,max_ratio,seed");
}

TEST_CASE("csv doubles survive a parse round trip") {
    const std::vector<std::size_t> dims{5};
    const auto rows = error_scan(dims, 0.5, 2.0, 3, 7);
    const std::string csv = to_csv(rows);
    // mean_error is the fifth field of the second line
    std::size_t pos = csv.find('\n') + 1;
    for (int field = 0; field < 4; ++field) pos = csv.find(',', pos) + 1;
    const double parsed = std::stod(csv.substr(pos, csv.find(',', pos) - pos));
    CHECK(parsed == rows[0].mean_error);
}

TEST_CASE("scan validation") {
    const std::vector<std::size_t> below{2};
    const std::vector<std::size_t> above{501};
    const std::vector<std::size_t> fine{5};
    CHECK_THROWS_AS(error_scan(below, 1.0, 1.0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(error_scan(above, 1.0, 1.0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(error_scan(fine, 1.0, 1.0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(error_scan(fine, -1.0, 1.0, 1, 0), std::invalid_argument);
}

TEST_CASE("rate fit filters duplicates and needs four distinct points") {
    const std::vector<std::size_t> three{10, 20, 40};
    CHECK_THROWS_AS(rate_fit(three, 1.0, 1.0, 1, 0), std::invalid_argument);
    const std::vector<std::size_t> padded{10, 10, 20, 40};
    CHECK_THROWS_AS(rate_fit(padded, 1.0, 1.0, 1, 0), std::invalid_argument);

    const std::vector<std::size_t> dup{10, 10, 20, 40, 80};
    const std::vector<std::size_t> plain{10, 20, 40, 80};
    CHECK(rate_fit(dup, 1.0, 1.0, 1, 5) == rate_fit(plain, 1.0, 1.0, 1, 5));
}

TEST_CASE("rate fit slope sits near the certified order") {
    const std::vector<std::size_t> dims{10, 20, 40, 80};
    const double slope = rate_fit(dims, 1.0, 1.0, 1, 0);
    CHECK(slope >= -2.3);
    CHECK(slope <= -1.8);
}

TEST_CASE("worst-case scan rows") {
    const std::vector<std::size_t> dims{20, 50};
    const auto rows = worst_case_scan(dims, 1.0, 2.0);
    REQUIRE(rows.size() == 2);
    for (const WorstCaseRow& r : rows) {
        CHECK(r.target == 1.0);
        CHECK(r.scaled_error > 0.0);
    }
    // dense-oracle values of the scaled error for this family
    CHECK(rows[0].scaled_error == doctest::Approx(1.2954545455).epsilon(1e-8));
    CHECK(rows[1].scaled_error == doctest::Approx(1.3179310345).epsilon(1e-8));

    // the row value re-derives from the oracle directly
    const DominantMatrix t = worst_case_family(20, 1.0, 2.0);
    const double err =
        sup_norm(subtract(exact_inverse(t), to_dense(build_approx(t))));
    CHECK(rows[0].scaled_error == doctest::Approx(361.0 * err).epsilon(1e-14));

    // collapsed range still produces a Theta(1) scaled error
    const std::vector<std::size_t> one{30};
    const auto flat = worst_case_scan(one, 1.0, 1.0);
    CHECK(flat[0].scaled_error > 0.5);
    CHECK(flat[0].scaled_error < 3.0);

    const std::vector<std::size_t> tiny{3};
    CHECK_THROWS_AS(worst_case_scan(tiny, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("trial seeds differ across cells") {
    CHECK(trial_seed(1, 10, 0) != trial_seed(1, 10, 1));
    CHECK(trial_seed(1, 10, 0) != trial_seed(1, 20, 0));
    CHECK(trial_seed(1, 10, 0) != trial_seed(2, 10, 0));
    CHECK(trial_seed(1, 10, 7) == trial_seed(1, 10, 7));
}
