#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "volcast/backtest.hpp"
#include "volcast/stats.hpp"

namespace volcast {

// Everything needed to reproduce a run given the input file. Rendered
// as a `#`-prefixed header block at the top of each output file;
// deterministic, so identical runs emit byte-identical files. The
// timestamp is only written when a caller sets it.
struct RunManifest {
    std::string tool_version;
    int horizon_days = 0;
    std::string grid_spec;
    double tolerance = 0.0;
    std::string evaluation_range;  // "from..to", empty bound = "*"
    std::vector<std::string> symbols;
    std::string date_span;
    std::size_t panel_rows = 0;
    std::string timestamp;

    static RunManifest from_run(const ReturnPanel& panel,
                                const BacktestConfig& config);
};

// Two-column table (lambda, mse), lambda ascending, shortest
// round-trip numeric encoding. Throws EmptyInputError on empty curves.
void emit_mse_curve(const std::vector<std::pair<double, double>>& curve,
                    const RunManifest& manifest, const std::string& path);

// Two-column table (date, lambda_opt).
void emit_lambda_path(
    const std::vector<std::pair<std::string, DecayParameter>>& path,
    const RunManifest& manifest, const std::string& destination);

// Full loss surface: one row per anchor date, one `se_<lambda>` column
// per grid value.
void emit_surface(const BacktestSurface& surface, const RunManifest& manifest,
                  const std::string& path);

// Key,value table with both strategies' MSEs and the DM verdict. A
// missing DM report marks the comparison as degenerate (identical
// strategies).
void emit_comparison_table(const StrategyLossSeries& fixed, double fixed_mse,
                           const StrategyLossSeries& adaptive,
                           double adaptive_mse,
                           const std::optional<DMReport>& dm,
                           const RunManifest& manifest, const std::string& path);

// Readers for the emitted formats (and for externally produced loss
// series). `#` lines are skipped everywhere.
std::vector<std::pair<double, double>> read_mse_curve(const std::string& path);
std::vector<std::pair<std::string, double>> read_lambda_path(
    const std::string& path);
StrategyLossSeries read_loss_series(const std::string& path);
std::map<std::string, std::string> read_key_value_table(const std::string& path);

}  // namespace volcast
