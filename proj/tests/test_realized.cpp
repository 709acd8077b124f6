#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "test_util.hpp"
#include "volcast/errors.hpp"
#include "volcast/realized.hpp"

using namespace volcast;

namespace {

ReturnPanel univariate(std::vector<double> values) {
    ReturnPanel panel;
    panel.symbols = {"A"};
    panel.dates = testutil::make_dates(values.size());
    panel.returns = std::move(values);
    return panel;
}

}  // namespace

TEST_CASE("zero returns give the zero matrix") {
    auto panel = testutil::random_return_panel(1, 10, 3);
    std::fill(panel.returns.begin(), panel.returns.end(), 0.0);
    auto cov = realized_covariance(panel, 9, 5);
    for (double v : cov.packed()) CHECK(v == 0.0);
    CHECK(cov.kind() == MatrixKind::realized);
    CHECK(cov.anchor_date() == panel.dates[9]);
}

TEST_CASE("hand-summed univariate realized variance") {
    auto panel = univariate({0.01, -0.02});
    auto cov = realized_covariance(panel, 1, 2);
    // 0.01^2 + 0.02^2
    CHECK(cov.at(0, 0) == doctest::Approx(0.0005).epsilon(1e-14));

    CHECK(realized_volatility(panel, "A", 1, 2) ==
          doctest::Approx(0.022360679774997897).epsilon(1e-14));
}

TEST_CASE("identical columns are perfectly correlated") {
    ReturnPanel panel;
    panel.symbols = {"A", "B"};
    panel.dates = testutil::make_dates(4);
    panel.returns = {0.01, 0.01, -0.02, -0.02, 0.005, 0.005, 0.03, 0.03};
    auto cov = realized_covariance(panel, 3, 4);
    CHECK(cov.at(0, 1) == cov.at(0, 0));
    CHECK(cov.at(0, 1) == cov.at(1, 1));
    CHECK(realized_correlation(cov, "A", "B") == 1.0);
    CHECK(realized_correlation(cov, "A", "A") == 1.0);
}

TEST_CASE("negated column is anti-correlated") {
    ReturnPanel panel;
    panel.symbols = {"A", "B"};
    panel.dates = testutil::make_dates(3);
    panel.returns = {0.01, -0.01, -0.02, 0.02, 0.015, -0.015};
    auto cov = realized_covariance(panel, 2, 3);
    CHECK(realized_correlation(cov, "A", "B") == -1.0);
}

TEST_CASE("zero variance makes correlation degenerate") {
    ReturnPanel panel;
    panel.symbols = {"A", "B"};
    panel.dates = testutil::make_dates(2);
    panel.returns = {0.01, 0.0, -0.02, 0.0};
    auto cov = realized_covariance(panel, 1, 2);
    CHECK_THROWS_AS(realized_correlation(cov, "A", "B"),
                    DegenerateVolatilityError);
}

TEST_CASE("single-term window reduces to |return|") {
    auto panel = univariate({-0.013});
    CHECK(realized_volatility(panel, "A", 0, 1) == doctest::Approx(0.013));
    auto zeros = univariate({0.0, 0.0, 0.0});
    CHECK(realized_volatility(zeros, "A", 2, 3) == 0.0);
}

TEST_CASE("insufficient history names required and available rows") {
    auto panel = univariate({0.01, 0.02});
    try {
        realized_covariance(panel, 1, 5);
        FAIL("expected InsufficientDataError");
    } catch (const InsufficientDataError& e) {
        std::string msg = e.what();
        CHECK(msg.find("5") != std::string::npos);
        CHECK(msg.find("2") != std::string::npos);
    }
}

TEST_CASE("realized matrix agrees with the brute-force oracle") {
    auto panel = testutil::random_return_panel(42, 60, 4);
    auto cov = realized_covariance(panel, 59, 21);
    auto expected = oracle::realized_cov(panel, 59, 21);
    for (std::size_t p = 0; p < expected.size(); ++p) {
        CHECK(cov.packed()[p] == doctest::Approx(expected[p]).epsilon(1e-13));
    }
}

TEST_CASE("realized matrices are positive semidefinite") {
    for (unsigned seed = 0; seed < 5; ++seed) {
        auto panel = testutil::random_return_panel(100 + seed, 50, 6);
        auto cov = realized_covariance(panel, 49, 10);
        CHECK(oracle::min_eigenvalue(cov) >= -1e-10 * cov.trace());
    }
}

TEST_CASE("scaling one asset scales its row, column and diagonal") {
    auto panel = testutil::random_return_panel(5, 30, 3);
    auto base = realized_covariance(panel, 29, 10);

    const double c = 2.5;
    auto scaled_panel = panel;
    for (std::size_t t = 0; t < panel.n_dates(); ++t) {
        scaled_panel.returns[t * 3 + 1] *= c;
    }
    auto scaled = realized_covariance(scaled_panel, 29, 10);

    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i; j < 3; ++j) {
            double factor = 1.0;
            if (i == 1) factor *= c;
            if (j == 1) factor *= c;
            const double expected = factor * base.at(i, j);
            CHECK(std::abs(scaled.at(i, j) - expected) <=
                  1e-12 * std::max(std::abs(expected), 1e-20));
        }
    }
}

TEST_CASE("windows add over consecutive partitions") {
    auto panel = testutil::random_return_panel(8, 40, 3);
    const std::size_t end = 39;
    const int t1 = 7, t2 = 13;
    auto whole = realized_covariance(panel, end, t1 + t2);
    auto recent = realized_covariance(panel, end, t2);
    auto older = realized_covariance(panel, end - t2, t1);
    for (std::size_t p = 0; p < whole.packed().size(); ++p) {
        const double sum = recent.packed()[p] + older.packed()[p];
        CHECK(std::abs(whole.packed()[p] - sum) <=
              1e-13 * std::max(1.0, std::abs(sum)));
    }
}

TEST_CASE("matrix storage mirrors the upper triangle") {
    auto panel = testutil::random_return_panel(9, 20, 4);
    auto cov = realized_covariance(panel, 19, 5);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(cov.at(i, j) == cov.at(j, i));
        }
    }
    CHECK(cov.packed().size() == 10);
}
