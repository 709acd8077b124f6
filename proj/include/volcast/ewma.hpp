#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "volcast/panel.hpp"
#include "volcast/realized.hpp"

namespace volcast {

// Exponential decay factor, strictly inside (0, 1).
class DecayParameter {
public:
    explicit DecayParameter(double value);
    double value() const { return value_; }

private:
    double value_;
};

// Truncation rule for the exponentially weighted sum: keep lags until
// the discarded tail weight drops below `tolerance`, optionally capped
// at `max_lags`.
struct TruncationPolicy {
    double tolerance = 0.01;
    std::optional<std::int64_t> max_lags;
};

// Smallest lag count N with lambda^N <= tolerance:
// ceil(ln(tolerance) / ln(lambda)), never below 1.
std::int64_t cutoff_lags(DecayParameter lambda, double tolerance);

// One-day-ahead EWMA variance-covariance forecast from the N most
// recent return rows ending at `forecast_origin`, weights normalized to
// sum to one: (1-lambda)/(1-lambda^N) * sum lambda^n * r_i * r_j.
//
// When fewer rows than the cutoff are available, all of them are used
// with the normalization adjusted to the available count and the result
// flagged history-limited. Summation runs oldest lag to newest.
CovarianceMatrix ewma_covariance_truncated(const ReturnPanel& returns,
                                           std::size_t forecast_origin,
                                           DecayParameter lambda,
                                           const TruncationPolicy& policy = {});

// One recurrence step: (1-lambda) * r_i * r_j + lambda * prev[i][j].
// `latest_returns` must be aligned to prev's symbol order; the result
// carries `new_anchor_date`. Throws AlignmentError on size mismatch and
// ContractError if prev is not a one-day forecast.
CovarianceMatrix ewma_update(const CovarianceMatrix& prev,
                             const std::vector<double>& latest_returns,
                             DecayParameter lambda,
                             const std::string& new_anchor_date);

// Flat multi-step forecast: a T-day forecast is T times the one-day
// forecast. Throws ContractError unless the input is a one-day forecast.
CovarianceMatrix scale_to_horizon(const CovarianceMatrix& one_day,
                                  int horizon_days);

}  // namespace volcast
