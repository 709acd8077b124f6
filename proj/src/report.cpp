#include "volcast/report.hpp"

#include <fstream>
#include <sstream>

#include "volcast/errors.hpp"
#include "volcast/format.hpp"
#include "volcast/version.hpp"

namespace volcast {

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream file(path);
    if (!file.is_open()) {
        throw IoError("cannot write output file: " + path);
    }
    return file;
}

void finish(std::ofstream& file, const std::string& path) {
    file.flush();
    if (!file.good()) {
        throw IoError("write failed: " + path);
    }
}

void write_manifest(std::ofstream& file, const RunManifest& m) {
    file << "# tool: " << m.tool_version << '\n';
    file << "# horizon_days: " << m.horizon_days << '\n';
    file << "# lambda_grid: " << m.grid_spec << '\n';
    file << "# tolerance: " << format_double(m.tolerance) << '\n';
    file << "# evaluation_range: "
         << (m.evaluation_range.empty() ? "*..*" : m.evaluation_range) << '\n';
    file << "# symbols: ";
    for (std::size_t i = 0; i < m.symbols.size(); ++i) {
        if (i) file << ',';
        file << m.symbols[i];
    }
    file << '\n';
    file << "# date_span: " << m.date_span << '\n';
    file << "# panel_rows: " << m.panel_rows << '\n';
    if (!m.timestamp.empty()) {
        file << "# timestamp: " << m.timestamp << '\n';
    }
}

std::vector<std::string> data_lines(const std::string& path) {
    std::ifstream file(path);
    if (!file.is_open()) {
        throw IoError("cannot open file: " + path);
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(file, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

std::pair<std::string, std::string> split_two(const std::string& line,
                                              const std::string& path) {
    auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
        throw ValidationError("expected exactly two columns in " + path +
                              ", got line: " + line);
    }
    return {line.substr(0, comma), line.substr(comma + 1)};
}

}  // namespace

RunManifest RunManifest::from_run(const ReturnPanel& panel,
                                  const BacktestConfig& config) {
    RunManifest m;
    m.tool_version = std::string(kToolName) + " " + std::string(kVersion);
    m.horizon_days = config.horizon_days;
    std::ostringstream grid;
    for (std::size_t j = 0; j < config.grid.size(); ++j) {
        if (j) grid << ',';
        grid << format_double(config.grid.values[j]);
    }
    m.grid_spec = grid.str();
    m.tolerance = config.truncation.tolerance;
    const auto& range = config.evaluation_range;
    if (!range.from.empty() || !range.to.empty()) {
        m.evaluation_range = (range.from.empty() ? "*" : range.from) + ".." +
                             (range.to.empty() ? "*" : range.to);
    }
    m.symbols = panel.symbols;
    if (!panel.dates.empty()) {
        m.date_span = panel.dates.front() + ".." + panel.dates.back();
    }
    m.panel_rows = panel.n_dates();
    return m;
}

void emit_mse_curve(const std::vector<std::pair<double, double>>& curve,
                    const RunManifest& manifest, const std::string& path) {
    if (curve.empty()) {
        throw EmptyInputError("MSE curve is empty");
    }
    auto file = open_output(path);
    write_manifest(file, manifest);
    file << "lambda,mse\n";
    for (const auto& [lambda, mse] : curve) {
        file << format_double(lambda) << ',' << format_double(mse) << '\n';
    }
    finish(file, path);
}

void emit_lambda_path(
    const std::vector<std::pair<std::string, DecayParameter>>& path,
    const RunManifest& manifest, const std::string& destination) {
    if (path.empty()) {
        throw EmptyInputError("optimal-lambda path is empty");
    }
    auto file = open_output(destination);
    write_manifest(file, manifest);
    file << "date,lambda_opt\n";
    for (const auto& [date, lambda] : path) {
        file << date << ',' << format_double(lambda.value()) << '\n';
    }
    finish(file, destination);
}

void emit_surface(const BacktestSurface& surface, const RunManifest& manifest,
                  const std::string& path) {
    if (surface.n_anchors() == 0) {
        throw EmptyInputError("backtest surface is empty");
    }
    auto file = open_output(path);
    write_manifest(file, manifest);
    file << "date";
    for (double lambda : surface.grid.values) {
        file << ",se_" << format_double(lambda);
    }
    file << '\n';
    for (std::size_t w = 0; w < surface.n_anchors(); ++w) {
        file << surface.anchors[w];
        for (std::size_t j = 0; j < surface.grid.size(); ++j) {
            file << ',' << format_double(surface.at(w, j));
        }
        file << '\n';
    }
    finish(file, path);
}

void emit_comparison_table(const StrategyLossSeries& fixed, double fixed_mse,
                           const StrategyLossSeries& adaptive,
                           double adaptive_mse,
                           const std::optional<DMReport>& dm,
                           const RunManifest& manifest, const std::string& path) {
    if (fixed.anchors != adaptive.anchors) {
        throw AlignmentError("comparison table needs aligned loss series");
    }
    auto file = open_output(path);
    write_manifest(file, manifest);
    file << "key,value\n";
    file << "fixed_label," << fixed.label << '\n';
    file << "fixed_mse," << format_double(fixed_mse) << '\n';
    file << "adaptive_label," << adaptive.label << '\n';
    file << "adaptive_mse," << format_double(adaptive_mse) << '\n';
    file << "n," << fixed.losses.size() << '\n';
    if (dm) {
        file << "dm_statistic," << format_double(dm->statistic) << '\n';
        file << "dm_p_value," << format_double(dm->p_value) << '\n';
        file << "dm_lag_window," << dm->lag_window << '\n';
        file << "dm_variance_floored," << (dm->variance_floored ? "true" : "false")
             << '\n';
        file << "dm_degenerate,false\n";
    } else {
        file << "dm_degenerate,true\n";
    }
    finish(file, path);
}

std::vector<std::pair<double, double>> read_mse_curve(const std::string& path) {
    std::vector<std::pair<double, double>> curve;
    auto lines = data_lines(path);
    for (std::size_t i = 1; i < lines.size(); ++i) {  // skip header
        auto [lambda, mse] = split_two(lines[i], path);
        curve.emplace_back(parse_double(lambda, path),
                           parse_double(mse, path));
    }
    return curve;
}

std::vector<std::pair<std::string, double>> read_lambda_path(
    const std::string& path) {
    std::vector<std::pair<std::string, double>> out;
    auto lines = data_lines(path);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto [date, lambda] = split_two(lines[i], path);
        out.emplace_back(date, parse_double(lambda, path));
    }
    return out;
}

StrategyLossSeries read_loss_series(const std::string& path) {
    StrategyLossSeries series;
    series.label = path;
    auto lines = data_lines(path);
    if (lines.empty()) {
        throw EmptyInputError("loss series file has no rows: " + path);
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto [date, loss] = split_two(lines[i], path);
        series.anchors.push_back(date);
        series.losses.push_back(parse_double(loss, path));
    }
    if (series.losses.empty()) {
        throw EmptyInputError("loss series file has a header but no data: " +
                              path);
    }
    return series;
}

std::map<std::string, std::string> read_key_value_table(const std::string& path) {
    std::map<std::string, std::string> out;
    auto lines = data_lines(path);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto [key, value] = split_two(lines[i], path);
        out[key] = value;
    }
    return out;
}

}  // namespace volcast
