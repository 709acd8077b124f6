#include "volcast/ewma.hpp"

#include <algorithm>
#include <cmath>

#include "volcast/errors.hpp"
#include "volcast/format.hpp"

namespace volcast {

DecayParameter::DecayParameter(double value) : value_(value) {
    if (!(value > 0.0 && value < 1.0)) {
        throw ValidationError("decay parameter must lie strictly in (0,1), got " +
                              format_double(value));
    }
}

std::int64_t cutoff_lags(DecayParameter lambda, double tolerance) {
    if (!(tolerance > 0.0 && tolerance < 1.0)) {
        throw ValidationError("truncation tolerance must lie in (0,1), got " +
                              format_double(tolerance));
    }
    // Both logs are negative; rounding up keeps the discarded tail
    // weight at or below the tolerance.
    const double raw = std::log(tolerance) / std::log(lambda.value());
    const auto n = static_cast<std::int64_t>(std::ceil(raw));
    return std::max<std::int64_t>(n, 1);
}

CovarianceMatrix ewma_covariance_truncated(const ReturnPanel& returns,
                                           std::size_t forecast_origin,
                                           DecayParameter lambda,
                                           const TruncationPolicy& policy) {
    if (returns.n_dates() == 0 || forecast_origin >= returns.n_dates()) {
        throw InsufficientDataError(
            "forecast origin " + std::to_string(forecast_origin) +
            " has no return history (panel rows: " +
            std::to_string(returns.n_dates()) + ")");
    }
    std::int64_t target = cutoff_lags(lambda, policy.tolerance);
    if (policy.max_lags) {
        if (*policy.max_lags < 1) {
            throw ValidationError("max_lags cap must be >= 1");
        }
        target = std::min(target, *policy.max_lags);
    }
    const auto available = static_cast<std::int64_t>(forecast_origin) + 1;
    const std::int64_t n_lags = std::min(target, available);

    const double lam = lambda.value();
    const std::size_t assets = returns.n_assets();
    const std::size_t n_packed = CovarianceMatrix::packed_size(assets);
    std::vector<double> acc(n_packed, 0.0);

    // Horner form over rows, oldest to newest: after the pass,
    // acc = sum_{n=0}^{N-1} lambda^n * x_{origin-n}.
    double lam_pow = 1.0;  // lambda^{lags consumed}
    const std::size_t first_row = forecast_origin + 1 - static_cast<std::size_t>(n_lags);
    for (std::size_t t = first_row; t <= forecast_origin; ++t) {
        const double* row = &returns.returns[t * assets];
        std::size_t p = 0;
        for (std::size_t i = 0; i < assets; ++i) {
            for (std::size_t j = i; j < assets; ++j) {
                acc[p] = lam * acc[p] + row[i] * row[j];
                ++p;
            }
        }
        lam_pow *= lam;
    }

    const double norm = (1.0 - lam) / (1.0 - lam_pow);
    CovarianceMatrix out(returns.symbols, 1, returns.dates[forecast_origin],
                         MatrixKind::forecast);
    auto& packed = out.packed();
    for (std::size_t p = 0; p < n_packed; ++p) {
        packed[p] = norm * acc[p];
    }
    out.set_history_limited(n_lags < target);
    return out;
}

CovarianceMatrix ewma_update(const CovarianceMatrix& prev,
                             const std::vector<double>& latest_returns,
                             DecayParameter lambda,
                             const std::string& new_anchor_date) {
    if (prev.kind() != MatrixKind::forecast || prev.horizon_days() != 1) {
        throw ContractError("ewma_update requires a one-day forecast matrix");
    }
    if (latest_returns.size() != prev.n_assets()) {
        throw AlignmentError("return vector has " +
                             std::to_string(latest_returns.size()) +
                             " entries, matrix has " +
                             std::to_string(prev.n_assets()) + " symbols");
    }
    const double lam = lambda.value();
    CovarianceMatrix out(prev.symbols(), 1, new_anchor_date,
                         MatrixKind::forecast);
    const std::size_t assets = prev.n_assets();
    std::size_t p = 0;
    auto& packed = out.packed();
    const auto& prev_packed = prev.packed();
    for (std::size_t i = 0; i < assets; ++i) {
        for (std::size_t j = i; j < assets; ++j) {
            packed[p] = (1.0 - lam) * latest_returns[i] * latest_returns[j] +
                        lam * prev_packed[p];
            ++p;
        }
    }
    return out;
}

CovarianceMatrix scale_to_horizon(const CovarianceMatrix& one_day,
                                  int horizon_days) {
    if (one_day.kind() != MatrixKind::forecast || one_day.horizon_days() != 1) {
        throw ContractError("scale_to_horizon requires a one-day forecast");
    }
    if (horizon_days < 1) {
        throw ValidationError("horizon must be >= 1 day, got " +
                              std::to_string(horizon_days));
    }
    CovarianceMatrix out(one_day.symbols(), horizon_days, one_day.anchor_date(),
                         MatrixKind::forecast);
    out.set_history_limited(one_day.history_limited());
    const double scale = static_cast<double>(horizon_days);
    const auto& src = one_day.packed();
    auto& dst = out.packed();
    for (std::size_t p = 0; p < src.size(); ++p) {
        dst[p] = scale * src[p];
    }
    return out;
}

}  // namespace volcast
