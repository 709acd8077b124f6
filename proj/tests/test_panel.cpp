#include <doctest.h>

#include <cmath>
#include <numeric>

#include "test_util.hpp"
#include "volcast/errors.hpp"
#include "volcast/panel.hpp"

using namespace volcast;

namespace {

const char* kLongForm =
    "date,symbol,adjusted_close\n"
    "2020-01-02,AAA,100.0\n"
    "2020-01-02,BBB,50.0\n"
    "2020-01-03,AAA,101.0\n"
    "2020-01-03,BBB,51.0\n"
    "2020-01-06,AAA,102.0\n"
    "2020-01-06,BBB,49.5\n";

}  // namespace

TEST_CASE("long form loads into an aligned panel") {
    testutil::TempDir dir;
    auto path = dir.file("prices.csv");
    testutil::write_file(path, kLongForm);

    auto panel = load_price_panel(path, {"AAA", "BBB"});
    CHECK(panel.n_dates() == 3);
    CHECK(panel.n_assets() == 2);
    CHECK(panel.dates == std::vector<std::string>{"2020-01-02", "2020-01-03",
                                                  "2020-01-06"});
    CHECK(panel.at(0, 0) == 100.0);
    CHECK(panel.at(2, 1) == 49.5);
}

TEST_CASE("columns follow the requested symbol order") {
    testutil::TempDir dir;
    auto path = dir.file("prices.csv");
    testutil::write_file(path, kLongForm);
    auto panel = load_price_panel(path, {"BBB", "AAA"});
    CHECK(panel.symbols == std::vector<std::string>{"BBB", "AAA"});
    CHECK(panel.at(0, 0) == 50.0);
    CHECK(panel.at(0, 1) == 100.0);

    auto wide_path = dir.file("wide.csv");
    testutil::write_file(wide_path,
                         "date,AAA,BBB\n"
                         "d1,100,50\n");
    auto wide = load_price_panel(wide_path, {"BBB", "AAA"});
    CHECK(wide.symbols == std::vector<std::string>{"BBB", "AAA"});
    CHECK(wide.at(0, 0) == 50.0);
}

TEST_CASE("alignment is a strict inner join on dates") {
    testutil::TempDir dir;
    auto path = dir.file("prices.csv");
    testutil::write_file(path,
                         "date,symbol,adjusted_close\n"
                         "d1,A,10\n"
                         "d2,A,11\n"
                         "d3,A,12\n"
                         "d2,B,20\n"
                         "d3,B,21\n"
                         "d4,B,22\n");
    auto panel = load_price_panel(path, {"A", "B"});
    CHECK(panel.dates == std::vector<std::string>{"d2", "d3"});
    CHECK(panel.at(0, 0) == 11.0);
    CHECK(panel.at(0, 1) == 20.0);
}

TEST_CASE("non-positive price names the offending cell") {
    testutil::TempDir dir;
    auto path = dir.file("prices.csv");
    testutil::write_file(path,
                         "date,symbol,adjusted_close\n"
                         "d1,A,10\n"
                         "d2,A,0\n");
    try {
        load_price_panel(path, {"A"});
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        std::string msg = e.what();
        CHECK(msg.find("d2") != std::string::npos);
        CHECK(msg.find("A") != std::string::npos);
    }
}

TEST_CASE("missing symbol is reported by name") {
    testutil::TempDir dir;
    auto path = dir.file("prices.csv");
    testutil::write_file(path, kLongForm);
    try {
        load_price_panel(path, {"AAA", "ZZZ"});
        FAIL("expected MissingSymbolError");
    } catch (const MissingSymbolError& e) {
        CHECK(std::string(e.what()).find("ZZZ") != std::string::npos);
    }
}

TEST_CASE("empty date intersection raises EmptyPanelError") {
    testutil::TempDir dir;
    auto path = dir.file("prices.csv");
    testutil::write_file(path,
                         "date,symbol,adjusted_close\n"
                         "d1,A,10\n"
                         "d2,B,20\n");
    CHECK_THROWS_AS(load_price_panel(path, {"A", "B"}), EmptyPanelError);
}

TEST_CASE("wide form with date window and missing cells") {
    testutil::TempDir dir;
    auto path = dir.file("prices.csv");
    testutil::write_file(path,
                         "date,AAA,BBB\n"
                         "2020-01-02,100,50\n"
                         "2020-01-03,101,\n"   // BBB missing: row dropped
                         "2020-01-06,102,51\n"
                         "2020-01-07,103,52\n");

    auto panel = load_price_panel(path, {}, DateRange{"2020-01-02", "2020-01-06"});
    CHECK(panel.symbols == std::vector<std::string>{"AAA", "BBB"});
    CHECK(panel.dates == std::vector<std::string>{"2020-01-02", "2020-01-06"});

    auto only_a = load_price_panel(path, {"AAA"});
    CHECK(only_a.n_dates() == 4);
}

TEST_CASE("non-numeric price is a validation error") {
    testutil::TempDir dir;
    auto path = dir.file("prices.csv");
    testutil::write_file(path,
                         "date,AAA\n"
                         "d1,abc\n");
    CHECK_THROWS_AS(load_price_panel(path, {"AAA"}), ValidationError);
}

TEST_CASE("duplicate dates are rejected") {
    testutil::TempDir dir;
    auto wide = dir.file("wide.csv");
    testutil::write_file(wide,
                         "date,AAA\n"
                         "d1,10\n"
                         "d1,11\n");
    CHECK_THROWS_AS(load_price_panel(wide, {"AAA"}), ValidationError);

    auto lng = dir.file("long.csv");
    testutil::write_file(lng,
                         "date,symbol,adjusted_close\n"
                         "d1,A,10\n"
                         "d1,A,11\n");
    CHECK_THROWS_AS(load_price_panel(lng, {"A"}), ValidationError);
}

TEST_CASE("log returns match an independently computed oracle") {
    PricePanel panel;
    panel.symbols = {"A"};
    panel.dates = {"d1", "d2", "d3"};
    panel.prices = {100.0, 110.0, 99.0};

    auto returns = compute_log_returns(panel);
    CHECK(returns.n_dates() == 2);
    CHECK(returns.dates == std::vector<std::string>{"d2", "d3"});
    // ln(110/100) and ln(99/110), frozen from a high-precision evaluation
    CHECK(returns.at(0, 0) == doctest::Approx(0.09531017980432493).epsilon(1e-14));
    CHECK(returns.at(1, 0) == doctest::Approx(-0.10536051565782628).epsilon(1e-14));
}

TEST_CASE("constant price gives zero return") {
    PricePanel panel;
    panel.symbols = {"A"};
    panel.dates = {"d1", "d2"};
    panel.prices = {100.0, 100.0};
    auto returns = compute_log_returns(panel);
    CHECK(returns.at(0, 0) == 0.0);
}

TEST_CASE("single-date panel cannot produce returns") {
    PricePanel panel;
    panel.symbols = {"A"};
    panel.dates = {"d1"};
    panel.prices = {100.0};
    CHECK_THROWS_AS(compute_log_returns(panel), InsufficientDataError);
}

TEST_CASE("returns round-trip back to prices") {
    auto panel = testutil::random_price_panel(7, 120, 3);
    auto returns = compute_log_returns(panel);
    REQUIRE(returns.n_dates() == panel.n_dates() - 1);

    for (std::size_t i = 0; i < panel.n_assets(); ++i) {
        double log_price = std::log(panel.at(0, i));
        for (std::size_t t = 0; t < returns.n_dates(); ++t) {
            log_price += returns.at(t, i);
            const double rebuilt = std::exp(log_price);
            CHECK(std::abs(rebuilt - panel.at(t + 1, i)) <=
                  1e-10 * panel.at(t + 1, i));
        }
    }
}

TEST_CASE("scaling one asset's prices leaves its returns unchanged") {
    auto panel = testutil::random_price_panel(11, 80, 2);
    auto base = compute_log_returns(panel);

    auto scaled = panel;
    for (std::size_t t = 0; t < scaled.n_dates(); ++t) {
        scaled.prices[t * scaled.n_assets() + 1] *= 3.7;
    }
    auto scaled_returns = compute_log_returns(scaled);
    for (std::size_t t = 0; t < base.n_dates(); ++t) {
        CHECK(std::abs(scaled_returns.at(t, 1) - base.at(t, 1)) <= 1e-15);
        CHECK(scaled_returns.at(t, 0) == base.at(t, 0));
    }
}

TEST_CASE("return panel writes and re-reads bit-exactly") {
    testutil::TempDir dir;
    auto panel = testutil::random_return_panel(3, 40, 2);
    panel.symbols = {"XY", "ZW"};
    auto path = dir.file("returns.csv");
    write_return_panel(panel, path);

    auto loaded = load_return_panel(path);
    CHECK(loaded.dates == panel.dates);
    CHECK(loaded.symbols == panel.symbols);
    REQUIRE(loaded.returns.size() == panel.returns.size());
    for (std::size_t k = 0; k < panel.returns.size(); ++k) {
        CHECK(loaded.returns[k] == panel.returns[k]);
    }
}
