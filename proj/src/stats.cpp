#include "volcast/stats.hpp"

#include <cmath>

#include "volcast/errors.hpp"

namespace volcast {

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double normal_two_sided_p(double z) {
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

DMReport dm_test(const StrategyLossSeries& losses_a,
                 const StrategyLossSeries& losses_b, std::size_t lag_window) {
    if (losses_a.anchors != losses_b.anchors) {
        throw AlignmentError("loss series are not aligned on the same anchors");
    }
    const std::size_t n = losses_a.losses.size();
    if (n < 2) {
        throw InsufficientDataError("DM test needs at least 2 observations, got " +
                                    std::to_string(n));
    }
    if (lag_window >= n) {
        throw ValidationError("lag window " + std::to_string(lag_window) +
                              " must be smaller than the sample size " +
                              std::to_string(n));
    }

    std::vector<double> d(n);
    for (std::size_t t = 0; t < n; ++t) {
        d[t] = losses_a.losses[t] - losses_b.losses[t];
    }
    double mean = 0.0;
    for (double v : d) mean += v;
    mean /= static_cast<double>(n);

    auto autocovariance = [&](std::size_t k) {
        double sum = 0.0;
        for (std::size_t t = k; t < n; ++t) {
            sum += (d[t] - mean) * (d[t - k] - mean);
        }
        return sum / static_cast<double>(n);
    };

    const double gamma0 = autocovariance(0);
    double long_run = gamma0;
    for (std::size_t k = 1; k <= lag_window; ++k) {
        long_run += 2.0 * autocovariance(k);
    }

    DMReport report;
    report.n = n;
    report.lag_window = lag_window;
    report.mean_differential = mean;
    if (long_run <= 0.0) {
        long_run = gamma0;
        report.variance_floored = true;
    }
    if (long_run <= 0.0) {
        throw DegenerateVarianceError(
            "loss differential has zero variance; the series are "
            "indistinguishable");
    }
    report.long_run_variance = long_run;
    report.statistic = mean / std::sqrt(long_run / static_cast<double>(n));
    report.p_value = normal_two_sided_p(report.statistic);
    return report;
}

}  // namespace volcast
