#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "volcast/panel.hpp"

namespace volcast {

enum class MatrixKind { realized, forecast };

// Symmetric (co)variance matrix for one anchor date and horizon.
// Only the upper triangle (including the diagonal) is stored, in
// row-major packed order; reads mirror it.
class CovarianceMatrix {
public:
    CovarianceMatrix(std::vector<std::string> symbols, int horizon_days,
                     std::string anchor_date, MatrixKind kind);

    static std::size_t packed_size(std::size_t n_assets) {
        return n_assets * (n_assets + 1) / 2;
    }

    // Packed row-major upper-triangle slot of (i, j), i <= j.
    std::size_t packed_index(std::size_t i, std::size_t j) const;

    double at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, double value);

    std::size_t n_assets() const { return symbols_.size(); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    int horizon_days() const { return horizon_days_; }
    const std::string& anchor_date() const { return anchor_date_; }
    MatrixKind kind() const { return kind_; }

    const std::vector<double>& packed() const { return values_; }
    std::vector<double>& packed() { return values_; }

    double trace() const;

    // Set when an EWMA estimate had fewer lags available than its
    // truncation cutoff asked for.
    bool history_limited() const { return history_limited_; }
    void set_history_limited(bool limited) { history_limited_ = limited; }

    // Index of a symbol; throws MissingSymbolError.
    std::size_t symbol_index(const std::string& symbol) const;

private:
    std::vector<std::string> symbols_;
    int horizon_days_;
    std::string anchor_date_;
    MatrixKind kind_;
    bool history_limited_ = false;
    std::vector<double> values_;
};

// Realized covariance over the T most recent return rows ending at
// `window_end` (inclusive): entries are plain sums of cross-products,
// not demeaned. Throws InsufficientDataError when fewer than T rows
// precede the window end.
CovarianceMatrix realized_covariance(const ReturnPanel& returns,
                                     std::size_t window_end, int horizon_days);

// Square root of the realized variance of one asset over the window.
double realized_volatility(const ReturnPanel& returns, const std::string& asset,
                           std::size_t window_end, int horizon_days);

// Correlation implied by a covariance matrix. Values within 1e-12 of
// +/-1 are clamped to the boundary. Throws DegenerateVolatilityError if
// either diagonal entry is not strictly positive.
double realized_correlation(const CovarianceMatrix& cov, const std::string& i,
                            const std::string& j);

}  // namespace volcast
