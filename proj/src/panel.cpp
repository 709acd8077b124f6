#include "volcast/panel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "volcast/errors.hpp"
#include "volcast/format.hpp"

namespace volcast {

namespace {

std::string trim(const std::string& s) {
    size_t start = s.find_first_not_of(" \t\r\n");
    if (start == std::string::npos) return "";
    size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(start, end - start + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, delim)) {
        fields.push_back(trim(field));
    }
    if (!line.empty() && line.back() == delim) fields.emplace_back();
    return fields;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

double parse_price(const std::string& token, size_t line_no,
                   const std::string& date, const std::string& symbol) {
    const std::string context = "line " + std::to_string(line_no) + " (date " +
                                date + ", symbol " + symbol + ")";
    double value = parse_double(token, context);
    if (value <= 0.0) {
        throw ValidationError("non-positive price " + token + " at " + context);
    }
    return value;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream file(path);
    if (!file.is_open()) {
        throw IoError("cannot open input file: " + path);
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(file, line)) {
        lines.push_back(line);
    }
    return lines;
}

void check_unique_symbols(const std::vector<std::string>& symbols) {
    std::unordered_set<std::string> seen;
    for (const auto& s : symbols) {
        if (!seen.insert(s).second) {
            throw ValidationError("duplicate symbol requested: " + s);
        }
    }
}

// Parsed contents of a wide-form file restricted to the requested
// symbols. Rows with a missing cell for any requested symbol are
// dropped (inner join); rows are returned sorted by date.
struct WideRows {
    std::vector<std::string> symbols;
    std::vector<std::pair<std::string, std::vector<double>>> rows;
};

WideRows parse_wide(const std::vector<std::string>& lines,
                    const std::vector<std::string>& header,
                    const std::vector<std::string>& requested,
                    const DateRange& range, bool require_positive) {
    std::vector<std::string> file_symbols(header.begin() + 1, header.end());

    std::vector<std::string> symbols = requested;
    if (symbols.empty()) symbols = file_symbols;
    check_unique_symbols(symbols);

    std::vector<size_t> columns;
    for (const auto& sym : symbols) {
        auto it = std::find(file_symbols.begin(), file_symbols.end(), sym);
        if (it == file_symbols.end()) {
            throw MissingSymbolError("symbol not present in input: " + sym);
        }
        columns.push_back(1 + static_cast<size_t>(it - file_symbols.begin()));
    }

    WideRows out;
    out.symbols = symbols;
    std::set<std::string> seen_dates;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        auto fields = split(lines[i], ',');
        if (fields.size() < header.size()) {
            throw ValidationError("line " + std::to_string(i + 1) + " has " +
                                  std::to_string(fields.size()) +
                                  " fields, header has " +
                                  std::to_string(header.size()));
        }
        const std::string& date = fields[0];
        if (date.empty()) {
            throw ValidationError("empty date at line " + std::to_string(i + 1));
        }
        if (!range.contains(date)) continue;
        if (!seen_dates.insert(date).second) {
            throw ValidationError("duplicate date " + date + " at line " +
                                  std::to_string(i + 1));
        }

        bool complete = true;
        std::vector<double> values(symbols.size());
        for (size_t c = 0; c < columns.size(); ++c) {
            const std::string& token = fields[columns[c]];
            if (token.empty()) {
                complete = false;  // missing observation, inner join drops the date
                break;
            }
            values[c] = require_positive
                            ? parse_price(token, i + 1, date, symbols[c])
                            : parse_double(token, "line " + std::to_string(i + 1) +
                                                      " (date " + date +
                                                      ", symbol " + symbols[c] + ")");
        }
        if (complete) out.rows.emplace_back(date, std::move(values));
    }
    std::sort(out.rows.begin(), out.rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

PricePanel panel_from_rows(WideRows&& rows) {
    if (rows.rows.empty()) {
        throw EmptyPanelError("no dates shared by all requested symbols in range");
    }
    PricePanel panel;
    panel.symbols = std::move(rows.symbols);
    panel.dates.reserve(rows.rows.size());
    panel.prices.reserve(rows.rows.size() * panel.symbols.size());
    for (auto& [date, values] : rows.rows) {
        panel.dates.push_back(std::move(date));
        panel.prices.insert(panel.prices.end(), values.begin(), values.end());
    }
    return panel;
}

PricePanel load_long_form(const std::vector<std::string>& lines,
                          const std::vector<std::string>& requested,
                          const DateRange& range) {
    // symbol -> (date -> price), dates sorted by the map
    std::map<std::string, std::map<std::string, double>> histories;
    std::vector<std::string> file_order;

    for (size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        auto fields = split(lines[i], ',');
        if (fields.size() != 3) {
            throw ValidationError("line " + std::to_string(i + 1) +
                                  " has " + std::to_string(fields.size()) +
                                  " fields, expected 3 (date,symbol,adjusted_close)");
        }
        const std::string& date = fields[0];
        const std::string& symbol = fields[1];
        if (date.empty() || symbol.empty()) {
            throw ValidationError("empty date or symbol at line " +
                                  std::to_string(i + 1));
        }
        if (!range.contains(date)) continue;
        if (!requested.empty() &&
            std::find(requested.begin(), requested.end(), symbol) ==
                requested.end()) {
            continue;
        }
        double price = parse_price(fields[2], i + 1, date, symbol);
        auto [it, inserted] = histories[symbol].emplace(date, price);
        (void)it;
        if (!inserted) {
            throw ValidationError("duplicate observation for symbol " + symbol +
                                  " on date " + date + " at line " +
                                  std::to_string(i + 1));
        }
        if (histories[symbol].size() == 1) file_order.push_back(symbol);
    }

    std::vector<std::string> symbols = requested;
    if (symbols.empty()) symbols = file_order;
    check_unique_symbols(symbols);
    if (symbols.empty()) {
        throw EmptyPanelError("input contains no observations in range");
    }
    for (const auto& sym : symbols) {
        if (histories.find(sym) == histories.end()) {
            throw MissingSymbolError("symbol not present in input: " + sym);
        }
    }

    // Inner join: dates present for every requested symbol.
    std::vector<std::string> dates;
    for (const auto& [date, price] : histories[symbols.front()]) {
        (void)price;
        bool shared = true;
        for (size_t s = 1; s < symbols.size(); ++s) {
            if (histories[symbols[s]].count(date) == 0) {
                shared = false;
                break;
            }
        }
        if (shared) dates.push_back(date);
    }
    if (dates.empty()) {
        throw EmptyPanelError("no dates shared by all requested symbols in range");
    }

    PricePanel panel;
    panel.symbols = symbols;
    panel.dates = dates;
    panel.prices.reserve(dates.size() * symbols.size());
    for (const auto& date : dates) {
        for (const auto& sym : symbols) {
            panel.prices.push_back(histories[sym].at(date));
        }
    }
    return panel;
}

bool is_long_header(const std::vector<std::string>& header) {
    return header.size() == 3 && lower(header[0]) == "date" &&
           lower(header[1]) == "symbol" && lower(header[2]) == "adjusted_close";
}

}  // namespace

PricePanel load_price_panel(const std::string& path,
                            const std::vector<std::string>& symbols,
                            const DateRange& range) {
    auto lines = read_lines(path);
    if (lines.empty()) {
        throw ValidationError("input file is empty: " + path);
    }
    auto header = split(lines[0], ',');
    if (header.size() < 2 || lower(header[0]) != "date") {
        throw ValidationError("unrecognized header in " + path +
                              ": expected long form (date,symbol,adjusted_close)"
                              " or wide form (date,<SYM>,...)");
    }
    if (is_long_header(header)) {
        return load_long_form(lines, symbols, range);
    }
    return panel_from_rows(parse_wide(lines, header, symbols, range,
                                      /*require_positive=*/true));
}

ReturnPanel compute_log_returns(const PricePanel& panel) {
    if (panel.n_dates() < 2) {
        throw InsufficientDataError(
            "need at least 2 dates to compute returns, have " +
            std::to_string(panel.n_dates()));
    }
    ReturnPanel out;
    out.symbols = panel.symbols;
    out.dates.assign(panel.dates.begin() + 1, panel.dates.end());
    const size_t assets = panel.n_assets();
    out.returns.resize(out.dates.size() * assets);
    for (size_t t = 0; t + 1 < panel.n_dates(); ++t) {
        for (size_t i = 0; i < assets; ++i) {
            out.returns[t * assets + i] =
                std::log(panel.at(t + 1, i) / panel.at(t, i));
        }
    }
    return out;
}

void write_return_panel(const ReturnPanel& panel, const std::string& path) {
    std::ofstream file(path);
    if (!file.is_open()) {
        throw IoError("cannot write output file: " + path);
    }
    file << "date";
    for (const auto& sym : panel.symbols) file << ',' << sym;
    file << '\n';
    for (size_t t = 0; t < panel.n_dates(); ++t) {
        file << panel.dates[t];
        for (size_t i = 0; i < panel.n_assets(); ++i) {
            file << ',' << format_double(panel.at(t, i));
        }
        file << '\n';
    }
    if (!file.good()) {
        throw IoError("write failed: " + path);
    }
}

ReturnPanel load_return_panel(const std::string& path) {
    auto lines = read_lines(path);
    if (lines.empty()) {
        throw ValidationError("input file is empty: " + path);
    }
    auto header = split(lines[0], ',');
    if (header.size() < 2 || lower(header[0]) != "date") {
        throw ValidationError("unrecognized header in " + path);
    }
    auto rows =
        parse_wide(lines, header, {}, DateRange{}, /*require_positive=*/false);
    if (rows.rows.empty()) {
        throw EmptyPanelError("return file has no data rows: " + path);
    }
    ReturnPanel panel;
    panel.symbols = std::move(rows.symbols);
    panel.dates.reserve(rows.rows.size());
    panel.returns.reserve(rows.rows.size() * panel.symbols.size());
    for (auto& [date, values] : rows.rows) {
        panel.dates.push_back(std::move(date));
        panel.returns.insert(panel.returns.end(), values.begin(), values.end());
    }
    return panel;
}

}  // namespace volcast
