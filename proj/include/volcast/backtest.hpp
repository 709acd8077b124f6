#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "volcast/ewma.hpp"
#include "volcast/panel.hpp"
#include "volcast/realized.hpp"

namespace volcast {

// Strictly increasing decay-parameter candidates, all inside (0, 1).
struct LambdaGrid {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

// Builds an evenly spaced grid from decimal bounds. Bounds and step are
// snapped to 9 decimal places so that e.g. 0.01:0.99:0.01 produces the
// exact doubles 0.01, 0.02, ..., 0.99.
LambdaGrid make_lambda_grid(double min, double max, double step);

// Throws ValidationError unless the grid is non-empty, strictly
// increasing, and inside (0, 1).
void validate_lambda_grid(const LambdaGrid& grid);

struct BacktestConfig {
    int horizon_days = 21;
    LambdaGrid grid;
    DateRange evaluation_range;  // empty bounds = whole panel
    TruncationPolicy truncation;
};

// Squared-error losses of every (forecast origin, lambda) pair.
// Row w scores the forecast made at anchors[w] against the realized
// matrix over the following horizon_days.
struct BacktestSurface {
    std::vector<std::string> anchors;
    LambdaGrid grid;
    std::vector<double> losses;  // row-major, anchors x grid
    int horizon_days = 0;
    std::size_t n_assets = 0;

    std::size_t n_anchors() const { return anchors.size(); }

    double at(std::size_t anchor, std::size_t lambda_index) const {
        return losses[anchor * grid.size() + lambda_index];
    }
};

// Per-anchor losses of one forecasting strategy.
struct StrategyLossSeries {
    std::vector<std::string> anchors;
    std::vector<double> losses;
    std::string label;

    // Series without its first `n` anchors; used to align a fixed-lambda
    // series with the adaptive one for paired comparison.
    StrategyLossSeries skip_first(std::size_t n) const;
};

double mean_loss(const StrategyLossSeries& series);

// Sum of squared entry differences over the upper triangle including
// the diagonal — each unordered asset pair counted once.
double squared_error(const CovarianceMatrix& forecast,
                     const CovarianceMatrix& realized);

// Rolling-window out-of-sample sweep. For every anchor date t in the
// evaluation range (daily step) and every lambda on the grid, the
// one-day EWMA forecast built from returns up to and including t is
// scaled to the horizon and scored against the realized covariance over
// t+1..t+T. Anchors whose T future days are missing are excluded.
//
// The lambda columns are computed concurrently (`n_threads`, 0 = all
// hardware threads); results are bitwise identical for any thread count
// because every column runs its own fixed-order recurrence.
BacktestSurface run_grid_backtest(const ReturnPanel& returns,
                                  const BacktestConfig& config,
                                  unsigned n_threads = 0);

// Mean loss per lambda across all anchors, lambda ascending.
std::vector<std::pair<double, double>> mse_curve(const BacktestSurface& surface);

// Grid lambda minimizing the MSE curve; ties go to the smaller lambda.
DecayParameter optimal_lambda_full(const BacktestSurface& surface);

// Per-anchor argmin across the grid row; ties go to the smaller lambda.
std::vector<std::pair<std::string, DecayParameter>> optimal_lambda_path(
    const BacktestSurface& surface);

// Losses of the time-varying strategy that reuses the previous anchor's
// optimal lambda. The first anchor has no predecessor and is dropped.
StrategyLossSeries adaptive_strategy_losses(const BacktestSurface& surface);

// Loss column of one fixed lambda, which must lie on the grid.
StrategyLossSeries fixed_strategy_losses(const BacktestSurface& surface,
                                         DecayParameter lambda);

}  // namespace volcast
