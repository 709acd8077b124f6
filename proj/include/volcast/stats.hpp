#pragma once

#include <cstddef>

#include "volcast/backtest.hpp"

namespace volcast {

// Diebold-Mariano test of equal predictive accuracy between two loss
// series. Positive statistic means the second series is more accurate.
struct DMReport {
    double statistic = 0.0;
    std::size_t n = 0;
    double p_value = 1.0;          // two-sided, standard normal null
    double mean_differential = 0.0;
    double long_run_variance = 0.0;
    std::size_t lag_window = 0;
    bool variance_floored = false;  // rectangular kernel went negative
};

// Standard normal CDF and the two-sided tail probability of |z|.
double normal_cdf(double z);
double normal_two_sided_p(double z);

// Loss differential d_t = a_t - b_t; long-run variance is the
// rectangular-kernel sum gamma_0 + 2 * sum_{k<=lag_window} gamma_k of
// the sample autocovariances (divisor n), floored at gamma_0 if the
// kernel sum is non-positive. DM = mean(d) / sqrt(D / n).
//
// Throws AlignmentError when anchors differ, InsufficientDataError when
// n < 2, ValidationError when lag_window >= n, and
// DegenerateVarianceError when the differential has no variance
// (e.g. identical series).
DMReport dm_test(const StrategyLossSeries& losses_a,
                 const StrategyLossSeries& losses_b, std::size_t lag_window);

}  // namespace volcast
