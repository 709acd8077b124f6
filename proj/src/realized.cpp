#include "volcast/realized.hpp"

#include <cmath>

#include "volcast/errors.hpp"

namespace volcast {

CovarianceMatrix::CovarianceMatrix(std::vector<std::string> symbols,
                                   int horizon_days, std::string anchor_date,
                                   MatrixKind kind)
    : symbols_(std::move(symbols)),
      horizon_days_(horizon_days),
      anchor_date_(std::move(anchor_date)),
      kind_(kind),
      values_(packed_size(symbols_.size()), 0.0) {
    if (symbols_.empty()) {
        throw ValidationError("covariance matrix needs at least one symbol");
    }
    if (horizon_days_ < 1) {
        throw ValidationError("horizon must be >= 1 day, got " +
                              std::to_string(horizon_days_));
    }
}

std::size_t CovarianceMatrix::packed_index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    const std::size_t n = symbols_.size();
    return i * n - i * (i - 1) / 2 + (j - i);
}

double CovarianceMatrix::at(std::size_t i, std::size_t j) const {
    return values_[packed_index(i, j)];
}

void CovarianceMatrix::set(std::size_t i, std::size_t j, double value) {
    values_[packed_index(i, j)] = value;
}

double CovarianceMatrix::trace() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < n_assets(); ++i) sum += at(i, i);
    return sum;
}

std::size_t CovarianceMatrix::symbol_index(const std::string& symbol) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i] == symbol) return i;
    }
    throw MissingSymbolError("symbol not in matrix: " + symbol);
}

CovarianceMatrix realized_covariance(const ReturnPanel& returns,
                                     std::size_t window_end, int horizon_days) {
    if (horizon_days < 1) {
        throw ValidationError("horizon must be >= 1 day, got " +
                              std::to_string(horizon_days));
    }
    if (window_end >= returns.n_dates()) {
        throw InsufficientDataError("window end index " +
                                    std::to_string(window_end) +
                                    " out of range, panel has " +
                                    std::to_string(returns.n_dates()) + " rows");
    }
    const std::size_t T = static_cast<std::size_t>(horizon_days);
    if (window_end + 1 < T) {
        throw InsufficientDataError(
            "realized window needs " + std::to_string(T) + " rows, only " +
            std::to_string(window_end + 1) + " available");
    }

    CovarianceMatrix cov(returns.symbols, horizon_days,
                         returns.dates[window_end], MatrixKind::realized);
    const std::size_t assets = returns.n_assets();
    auto& packed = cov.packed();
    // Fixed chronological order keeps results bitwise reproducible.
    for (std::size_t t = window_end + 1 - T; t <= window_end; ++t) {
        const double* row = &returns.returns[t * assets];
        std::size_t p = 0;
        for (std::size_t i = 0; i < assets; ++i) {
            for (std::size_t j = i; j < assets; ++j) {
                packed[p++] += row[i] * row[j];
            }
        }
    }
    return cov;
}

double realized_volatility(const ReturnPanel& returns, const std::string& asset,
                           std::size_t window_end, int horizon_days) {
    std::size_t col = returns.symbols.size();
    for (std::size_t i = 0; i < returns.symbols.size(); ++i) {
        if (returns.symbols[i] == asset) {
            col = i;
            break;
        }
    }
    if (col == returns.symbols.size()) {
        throw MissingSymbolError("symbol not in panel: " + asset);
    }
    auto cov = realized_covariance(returns, window_end, horizon_days);
    return std::sqrt(cov.at(col, col));
}

double realized_correlation(const CovarianceMatrix& cov, const std::string& i,
                            const std::string& j) {
    const std::size_t a = cov.symbol_index(i);
    const std::size_t b = cov.symbol_index(j);
    const double var_a = cov.at(a, a);
    const double var_b = cov.at(b, b);
    if (var_a <= 0.0 || var_b <= 0.0) {
        throw DegenerateVolatilityError(
            "correlation undefined: zero variance for " +
            (var_a <= 0.0 ? i : j));
    }
    double rho = cov.at(a, b) / std::sqrt(var_a * var_b);
    if (rho > 1.0 && rho <= 1.0 + 1e-12) rho = 1.0;
    if (rho < -1.0 && rho >= -1.0 - 1e-12) rho = -1.0;
    return rho;
}

}  // namespace volcast
