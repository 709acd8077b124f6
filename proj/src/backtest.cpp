#include "volcast/backtest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "volcast/errors.hpp"
#include "volcast/format.hpp"

namespace volcast {

namespace {

constexpr double kGridScale = 1e9;

std::int64_t to_grid_units(double value, const char* name) {
    const auto units = static_cast<std::int64_t>(std::llround(value * kGridScale));
    if (std::abs(static_cast<double>(units) / kGridScale - value) > 1e-12) {
        throw ValidationError(std::string("grid ") + name +
                              " must have at most 9 decimal places, got " +
                              format_double(value));
    }
    return units;
}

}  // namespace

LambdaGrid make_lambda_grid(double min, double max, double step) {
    if (step <= 0.0) {
        throw ValidationError("grid step must be positive, got " +
                              format_double(step));
    }
    const std::int64_t lo = to_grid_units(min, "min");
    const std::int64_t hi = to_grid_units(max, "max");
    const std::int64_t inc = to_grid_units(step, "step");
    if (inc <= 0 || lo > hi) {
        throw ValidationError("grid bounds must satisfy min <= max with step > 0");
    }
    LambdaGrid grid;
    for (std::int64_t units = lo; units <= hi; units += inc) {
        grid.values.push_back(static_cast<double>(units) / kGridScale);
    }
    validate_lambda_grid(grid);
    return grid;
}

void validate_lambda_grid(const LambdaGrid& grid) {
    if (grid.values.empty()) {
        throw ValidationError("lambda grid is empty");
    }
    double prev = 0.0;
    for (double v : grid.values) {
        if (!(v > 0.0 && v < 1.0)) {
            throw ValidationError("grid lambda out of (0,1): " + format_double(v));
        }
        if (v <= prev) {
            throw ValidationError("grid lambdas must be strictly increasing");
        }
        prev = v;
    }
}

StrategyLossSeries StrategyLossSeries::skip_first(std::size_t n) const {
    StrategyLossSeries out;
    out.label = label;
    if (n < anchors.size()) {
        out.anchors.assign(anchors.begin() + static_cast<std::ptrdiff_t>(n),
                           anchors.end());
        out.losses.assign(losses.begin() + static_cast<std::ptrdiff_t>(n),
                          losses.end());
    }
    return out;
}

double mean_loss(const StrategyLossSeries& series) {
    if (series.losses.empty()) {
        throw EmptyInputError("loss series '" + series.label + "' is empty");
    }
    double sum = 0.0;
    for (double v : series.losses) sum += v;
    return sum / static_cast<double>(series.losses.size());
}

double squared_error(const CovarianceMatrix& forecast,
                     const CovarianceMatrix& realized) {
    if (forecast.kind() != MatrixKind::forecast ||
        realized.kind() != MatrixKind::realized) {
        throw AlignmentError(
            "squared_error expects a forecast matrix and a realized matrix");
    }
    if (forecast.symbols() != realized.symbols()) {
        throw AlignmentError("matrices cover different symbols");
    }
    if (forecast.horizon_days() != realized.horizon_days()) {
        throw AlignmentError("horizon mismatch: forecast " +
                             std::to_string(forecast.horizon_days()) +
                             " vs realized " +
                             std::to_string(realized.horizon_days()));
    }
    const auto& f = forecast.packed();
    const auto& r = realized.packed();
    double sum = 0.0;
    for (std::size_t p = 0; p < f.size(); ++p) {
        const double diff = f[p] - r[p];
        sum += diff * diff;
    }
    return sum;
}

namespace {

// One lambda column of the sweep. A Horner recurrence over the rows
// keeps the truncated weighted sum current: while fewer rows than the
// cutoff are available it just accumulates; once the window is full,
// each step retires the oldest lag with weight lambda^N. Numerically
// this tracks the direct sum far inside the backtest tolerances because
// the retired weight is at most the truncation tolerance.
void sweep_lambda_column(const ReturnPanel& returns, const BacktestConfig& config,
                         const std::vector<double>& cross,
                         const std::vector<double>& realized,
                         const std::vector<std::size_t>& anchor_rows,
                         std::size_t lambda_index, std::vector<double>& losses) {
    const double lam = config.grid.values[lambda_index];
    const std::size_t n_lambdas = config.grid.size();
    const std::size_t assets = returns.n_assets();
    const std::size_t n_packed = CovarianceMatrix::packed_size(assets);
    const double horizon = static_cast<double>(config.horizon_days);

    std::int64_t target = cutoff_lags(DecayParameter(lam), config.truncation.tolerance);
    if (config.truncation.max_lags) {
        target = std::min(target, *config.truncation.max_lags);
    }

    std::vector<double> acc(n_packed, 0.0);
    double lam_pow = 1.0;   // lambda^(rows consumed), while growing
    double tail_w = 0.0;    // lambda^target, once the window is full
    double denom = 0.0;     // lambda^(lags in the window)
    std::size_t next_anchor = 0;

    const std::size_t last_row = anchor_rows.back();
    for (std::size_t t = 0; t <= last_row; ++t) {
        const double* row_x = &cross[t * n_packed];
        if (static_cast<std::int64_t>(t) < target) {
            for (std::size_t p = 0; p < n_packed; ++p) {
                acc[p] = lam * acc[p] + row_x[p];
            }
            lam_pow *= lam;
            denom = lam_pow;
            if (static_cast<std::int64_t>(t) + 1 == target) tail_w = lam_pow;
        } else {
            const double* old_x = &cross[(t - static_cast<std::size_t>(target)) * n_packed];
            for (std::size_t p = 0; p < n_packed; ++p) {
                acc[p] = lam * acc[p] + row_x[p] - tail_w * old_x[p];
            }
            denom = tail_w;
        }

        if (next_anchor < anchor_rows.size() && anchor_rows[next_anchor] == t) {
            const double norm = (1.0 - lam) / (1.0 - denom);
            const double* target_cov = &realized[next_anchor * n_packed];
            double loss = 0.0;
            for (std::size_t p = 0; p < n_packed; ++p) {
                const double diff = horizon * (norm * acc[p]) - target_cov[p];
                loss += diff * diff;
            }
            losses[next_anchor * n_lambdas + lambda_index] = loss;
            ++next_anchor;
        }
    }
}

}  // namespace

BacktestSurface run_grid_backtest(const ReturnPanel& returns,
                                  const BacktestConfig& config,
                                  unsigned n_threads) {
    if (config.horizon_days < 1) {
        throw ValidationError("horizon must be >= 1 day, got " +
                              std::to_string(config.horizon_days));
    }
    validate_lambda_grid(config.grid);
    if (!(config.truncation.tolerance > 0.0 && config.truncation.tolerance < 1.0)) {
        throw ValidationError("truncation tolerance must lie in (0,1)");
    }
    if (config.truncation.max_lags && *config.truncation.max_lags < 1) {
        throw ValidationError("max_lags cap must be >= 1");
    }

    const std::size_t rows = returns.n_dates();
    const std::size_t assets = returns.n_assets();
    const auto horizon = static_cast<std::size_t>(config.horizon_days);

    // Anchors: evaluation-range rows with a full horizon of future data.
    std::vector<std::size_t> anchor_rows;
    for (std::size_t t = 0; t + horizon < rows; ++t) {
        if (config.evaluation_range.contains(returns.dates[t])) {
            anchor_rows.push_back(t);
        }
    }
    if (anchor_rows.empty()) {
        throw EmptyEvaluationError(
            "no forecast anchors: evaluation range selects no dates with " +
            std::to_string(horizon) + " future days available");
    }

    const std::size_t n_packed = CovarianceMatrix::packed_size(assets);
    const std::size_t n_anchors = anchor_rows.size();
    const std::size_t n_lambdas = config.grid.size();

    // Cross-product rows x_t = r_t r_t^T (packed), shared by all columns.
    std::vector<double> cross(rows * n_packed);
    for (std::size_t t = 0; t < rows; ++t) {
        const double* row = &returns.returns[t * assets];
        double* out = &cross[t * n_packed];
        std::size_t p = 0;
        for (std::size_t i = 0; i < assets; ++i) {
            for (std::size_t j = i; j < assets; ++j) {
                out[p++] = row[i] * row[j];
            }
        }
    }

    // Realized covariance over t+1..t+T per anchor, summed in
    // chronological order exactly as realized_covariance does.
    std::vector<double> realized(n_anchors * n_packed, 0.0);
    for (std::size_t a = 0; a < n_anchors; ++a) {
        double* out = &realized[a * n_packed];
        for (std::size_t k = anchor_rows[a] + 1; k <= anchor_rows[a] + horizon; ++k) {
            const double* x = &cross[k * n_packed];
            for (std::size_t p = 0; p < n_packed; ++p) out[p] += x[p];
        }
    }

    std::vector<double> losses(n_anchors * n_lambdas, 0.0);

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned workers = n_threads == 0 ? hw : n_threads;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n_lambdas));

    if (workers <= 1) {
        for (std::size_t j = 0; j < n_lambdas; ++j) {
            sweep_lambda_column(returns, config, cross, realized, anchor_rows, j,
                                losses);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                try {
                    for (std::size_t j = next.fetch_add(1); j < n_lambdas;
                         j = next.fetch_add(1)) {
                        sweep_lambda_column(returns, config, cross, realized,
                                            anchor_rows, j, losses);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    for (double v : losses) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ValidationError("backtest produced a non-finite loss; check input returns");
        }
    }

    BacktestSurface surface;
    surface.grid = config.grid;
    surface.losses = std::move(losses);
    surface.horizon_days = config.horizon_days;
    surface.n_assets = assets;
    surface.anchors.reserve(n_anchors);
    for (std::size_t t : anchor_rows) surface.anchors.push_back(returns.dates[t]);
    return surface;
}

std::vector<std::pair<double, double>> mse_curve(const BacktestSurface& surface) {
    if (surface.n_anchors() == 0) {
        throw EmptyEvaluationError("surface has no anchors");
    }
    const std::size_t n_lambdas = surface.grid.size();
    std::vector<std::pair<double, double>> curve;
    curve.reserve(n_lambdas);
    for (std::size_t j = 0; j < n_lambdas; ++j) {
        double sum = 0.0;
        for (std::size_t w = 0; w < surface.n_anchors(); ++w) {
            sum += surface.at(w, j);
        }
        curve.emplace_back(surface.grid.values[j],
                           sum / static_cast<double>(surface.n_anchors()));
    }
    return curve;
}

DecayParameter optimal_lambda_full(const BacktestSurface& surface) {
    auto curve = mse_curve(surface);
    std::size_t best = 0;
    for (std::size_t j = 1; j < curve.size(); ++j) {
        if (curve[j].second < curve[best].second) best = j;
    }
    return DecayParameter(curve[best].first);
}

std::vector<std::pair<std::string, DecayParameter>> optimal_lambda_path(
    const BacktestSurface& surface) {
    if (surface.n_anchors() == 0) {
        throw EmptyEvaluationError("surface has no anchors");
    }
    std::vector<std::pair<std::string, DecayParameter>> path;
    path.reserve(surface.n_anchors());
    for (std::size_t w = 0; w < surface.n_anchors(); ++w) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < surface.grid.size(); ++j) {
            if (surface.at(w, j) < surface.at(w, best)) best = j;
        }
        path.emplace_back(surface.anchors[w],
                          DecayParameter(surface.grid.values[best]));
    }
    return path;
}

StrategyLossSeries adaptive_strategy_losses(const BacktestSurface& surface) {
    if (surface.n_anchors() < 2) {
        throw InsufficientAnchorsError(
            "adaptive strategy needs at least 2 anchors, surface has " +
            std::to_string(surface.n_anchors()));
    }
    // Two passes: per-row argmin, then lagged lookup.
    std::vector<std::size_t> argmin(surface.n_anchors());
    for (std::size_t w = 0; w < surface.n_anchors(); ++w) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < surface.grid.size(); ++j) {
            if (surface.at(w, j) < surface.at(w, best)) best = j;
        }
        argmin[w] = best;
    }
    StrategyLossSeries series;
    series.label = "adaptive(prev-day optimal lambda)";
    series.anchors.assign(surface.anchors.begin() + 1, surface.anchors.end());
    series.losses.reserve(surface.n_anchors() - 1);
    for (std::size_t w = 1; w < surface.n_anchors(); ++w) {
        series.losses.push_back(surface.at(w, argmin[w - 1]));
    }
    return series;
}

StrategyLossSeries fixed_strategy_losses(const BacktestSurface& surface,
                                         DecayParameter lambda) {
    const auto& values = surface.grid.values;
    std::size_t column = values.size();
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (values[j] == lambda.value() ||
            std::abs(values[j] - lambda.value()) <= 1e-12) {
            column = j;
            break;
        }
    }
    if (column == values.size()) {
        throw UnknownLambdaError("lambda " + format_double(lambda.value()) +
                                 " is not on the backtest grid");
    }
    StrategyLossSeries series;
    series.label = "fixed(lambda=" + format_double(values[column]) + ")";
    series.anchors = surface.anchors;
    series.losses.reserve(surface.n_anchors());
    for (std::size_t w = 0; w < surface.n_anchors(); ++w) {
        series.losses.push_back(surface.at(w, column));
    }
    return series;
}

}  // namespace volcast
