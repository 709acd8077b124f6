// Command-line driver: ingest -> grid backtest -> DM comparison -> report files.
#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "volcast/backtest.hpp"
#include "volcast/errors.hpp"
#include "volcast/format.hpp"
#include "volcast/panel.hpp"
#include "volcast/report.hpp"
#include "volcast/stats.hpp"
#include "volcast/version.hpp"

namespace {

struct CommonOptions {
    std::string input;
    std::vector<std::string> symbols;
    std::string from;
    std::string to;
    std::string out_dir = ".";
};

struct BacktestOptions {
    CommonOptions common;
    int horizon = 21;
    double grid_min = 0.01;
    double grid_max = 0.99;
    double grid_step = 0.01;
    double tolerance = 0.01;
    int dm_lags = -1;  // -1: default to horizon - 1
    unsigned threads = 0;
};

struct DmOptions {
    std::string losses_a;
    std::string losses_b;
    int lag_window = 0;
};

std::string output_path(const std::string& out_dir, const std::string& name) {
    std::filesystem::create_directories(out_dir);
    return (std::filesystem::path(out_dir) / name).string();
}

int run_returns(const CommonOptions& opt) {
    volcast::DateRange range{opt.from, opt.to};
    auto prices = volcast::load_price_panel(opt.input, opt.symbols, range);
    auto returns = volcast::compute_log_returns(prices);
    const std::string path = output_path(opt.out_dir, "returns.csv");
    volcast::write_return_panel(returns, path);
    std::cout << "rows: " << returns.n_dates() << '\n';
    std::cout << "symbols: " << returns.n_assets() << '\n';
    std::cout << "wrote: " << path << '\n';
    return 0;
}

int run_backtest(const BacktestOptions& opt) {
    auto prices = volcast::load_price_panel(opt.common.input, opt.common.symbols);
    auto returns = volcast::compute_log_returns(prices);

    volcast::BacktestConfig config;
    config.horizon_days = opt.horizon;
    config.grid = volcast::make_lambda_grid(opt.grid_min, opt.grid_max,
                                            opt.grid_step);
    config.evaluation_range = volcast::DateRange{opt.common.from, opt.common.to};
    config.truncation.tolerance = opt.tolerance;

    auto surface = volcast::run_grid_backtest(returns, config, opt.threads);
    auto curve = volcast::mse_curve(surface);
    auto lambda_star = volcast::optimal_lambda_full(surface);
    auto path = volcast::optimal_lambda_path(surface);
    auto adaptive = volcast::adaptive_strategy_losses(surface);
    auto fixed =
        volcast::fixed_strategy_losses(surface, lambda_star).skip_first(1);

    const std::size_t lag_window =
        opt.dm_lags >= 0 ? static_cast<std::size_t>(opt.dm_lags)
                         : static_cast<std::size_t>(opt.horizon - 1);
    std::optional<volcast::DMReport> dm;
    try {
        dm = volcast::dm_test(fixed, adaptive, lag_window);
    } catch (const volcast::DegenerateVarianceError&) {
        // identical strategies: still report, flagged degenerate
    }

    const double fixed_mse = volcast::mean_loss(fixed);
    const double adaptive_mse = volcast::mean_loss(adaptive);

    auto manifest = volcast::RunManifest::from_run(returns, config);
    const std::string surface_path =
        output_path(opt.common.out_dir, "surface.csv");
    const std::string curve_path =
        output_path(opt.common.out_dir, "mse_curve.csv");
    const std::string path_path =
        output_path(opt.common.out_dir, "lambda_path.csv");
    const std::string comparison_path =
        output_path(opt.common.out_dir, "comparison.csv");
    volcast::emit_surface(surface, manifest, surface_path);
    volcast::emit_mse_curve(curve, manifest, curve_path);
    volcast::emit_lambda_path(path, manifest, path_path);
    volcast::emit_comparison_table(fixed, fixed_mse, adaptive, adaptive_mse, dm,
                                   manifest, comparison_path);

    std::cout << "anchors: " << surface.n_anchors() << '\n';
    std::cout << "lambda_star: " << volcast::format_double(lambda_star.value())
              << '\n';
    std::cout << "fixed_mse: " << volcast::format_double(fixed_mse) << '\n';
    std::cout << "adaptive_mse: " << volcast::format_double(adaptive_mse)
              << '\n';
    if (dm) {
        std::cout << "dm_statistic: " << volcast::format_double(dm->statistic)
                  << '\n';
        std::cout << "dm_p_value: " << volcast::format_double(dm->p_value)
                  << '\n';
    } else {
        std::cout << "dm_statistic: degenerate (identical strategies)\n";
    }
    for (const auto& p : {surface_path, curve_path, path_path, comparison_path}) {
        std::cout << "wrote: " << p << '\n';
    }
    return 0;
}

int run_dm(const DmOptions& opt) {
    auto a = volcast::read_loss_series(opt.losses_a);
    auto b = volcast::read_loss_series(opt.losses_b);
    auto report = volcast::dm_test(a, b, static_cast<std::size_t>(opt.lag_window));
    std::cout << "dm_statistic: " << volcast::format_double(report.statistic)
              << '\n';
    std::cout << "p_value: " << volcast::format_double(report.p_value) << '\n';
    std::cout << "n: " << report.n << '\n';
    std::cout << "lag_window: " << report.lag_window << '\n';
    if (report.variance_floored) {
        std::cout << "note: long-run variance floored at gamma_0\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(volcast::kToolName) +
                 " - EWMA variance-covariance forecasting and decay-parameter "
                 "backtesting"};
    app.set_version_flag("--version", std::string(volcast::kVersion));
    app.require_subcommand(1);

    CommonOptions returns_opt;
    auto* cmd_returns =
        app.add_subcommand("returns", "Load a price CSV and write log returns");
    cmd_returns->add_option("--input", returns_opt.input, "Price CSV (long or wide form)")
        ->required();
    cmd_returns->add_option("--symbols", returns_opt.symbols,
                            "Symbols to keep (default: all)")
        ->delimiter(',');
    cmd_returns->add_option("--from", returns_opt.from, "First date to load (ISO-8601)");
    cmd_returns->add_option("--to", returns_opt.to, "Last date to load (ISO-8601)");
    cmd_returns->add_option("--out-dir", returns_opt.out_dir,
                            "Output directory (writes returns.csv)");

    BacktestOptions bt;
    auto* cmd_backtest = app.add_subcommand(
        "backtest",
        "Sweep the lambda grid over rolling windows and compare strategies");
    cmd_backtest->add_option("--input", bt.common.input, "Price CSV (long or wide form)")
        ->required();
    cmd_backtest->add_option("--symbols", bt.common.symbols,
                             "Symbols to keep (default: all)")
        ->delimiter(',');
    cmd_backtest->add_option("--from", bt.common.from,
                             "First forecast anchor date (earlier data warms up the estimator)");
    cmd_backtest->add_option("--to", bt.common.to, "Last forecast anchor date");
    cmd_backtest->add_option("--horizon", bt.horizon, "Forecast horizon in trading days")
        ->check(CLI::PositiveNumber);
    cmd_backtest->add_option("--grid-min", bt.grid_min, "Smallest lambda on the grid");
    cmd_backtest->add_option("--grid-max", bt.grid_max, "Largest lambda on the grid");
    cmd_backtest->add_option("--grid-step", bt.grid_step, "Lambda grid spacing");
    cmd_backtest->add_option("--tolerance", bt.tolerance,
                             "Truncation tolerance for the EWMA lag cutoff");
    cmd_backtest->add_option("--dm-lags", bt.dm_lags,
                             "DM long-run variance lag window (default: horizon-1)");
    cmd_backtest->add_option("--threads", bt.threads,
                             "Worker threads for the sweep (0 = hardware, 1 = serial)");
    cmd_backtest->add_option("--out-dir", bt.common.out_dir,
                             "Output directory for the four report files");

    DmOptions dm_opt;
    auto* cmd_dm = app.add_subcommand(
        "dm", "Diebold-Mariano test between two loss series files");
    cmd_dm->add_option("losses_a", dm_opt.losses_a, "First loss series CSV (date,loss)")
        ->required();
    cmd_dm->add_option("losses_b", dm_opt.losses_b, "Second loss series CSV (date,loss)")
        ->required();
    cmd_dm->add_option("--dm-lags", dm_opt.lag_window,
                       "Long-run variance lag window")
        ->check(CLI::NonNegativeNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_returns->parsed()) return run_returns(returns_opt);
        if (cmd_backtest->parsed()) return run_backtest(bt);
        if (cmd_dm->parsed()) return run_dm(dm_opt);
    } catch (const volcast::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
