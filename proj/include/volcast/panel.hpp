#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace volcast {

// Closed date interval. Empty bounds are open ends. Dates are opaque
// ordered labels; ISO-8601 strings compare correctly lexicographically.
struct DateRange {
    std::string from;
    std::string to;

    bool contains(const std::string& date) const {
        if (!from.empty() && date < from) return false;
        if (!to.empty() && date > to) return false;
        return true;
    }
};

// Date-aligned table of adjusted closing prices, rows = trading dates,
// columns = assets. Dates are strictly increasing, every cell is a
// positive finite price (the panel is the inner join of the per-asset
// histories, so there are no holes).
struct PricePanel {
    std::vector<std::string> dates;
    std::vector<std::string> symbols;
    std::vector<double> prices;  // row-major, dates x symbols

    std::size_t n_dates() const { return dates.size(); }
    std::size_t n_assets() const { return symbols.size(); }

    double at(std::size_t row, std::size_t col) const {
        return prices[row * symbols.size() + col];
    }
};

// Log-return table derived from a PricePanel. Row t holds
// ln(P[t+1]/P[t]) of the source panel and carries the later date.
struct ReturnPanel {
    std::vector<std::string> dates;
    std::vector<std::string> symbols;
    std::vector<double> returns;  // row-major, dates x symbols

    std::size_t n_dates() const { return dates.size(); }
    std::size_t n_assets() const { return symbols.size(); }

    double at(std::size_t row, std::size_t col) const {
        return returns[row * symbols.size() + col];
    }
};

// Loads a CSV price file into an aligned panel.
//
// Two layouts are accepted and normalized to the same panel:
//   long form: header `date,symbol,adjusted_close`, one observation per row
//   wide form: header `date,<SYM1>,<SYM2>,...`, one date per row
//
// Alignment is a strict inner join on dates across the requested symbols;
// nothing is forward-filled. An empty `symbols` list means "every symbol
// found in the file", in file order. Dates outside `range` are dropped
// before validation.
//
// Throws MissingSymbolError, ValidationError (row/column identified),
// EmptyPanelError, IoError.
PricePanel load_price_panel(const std::string& path,
                            const std::vector<std::string>& symbols = {},
                            const DateRange& range = {});

// Continuously compounded returns between consecutive panel rows.
// Throws InsufficientDataError if the panel has fewer than two dates.
ReturnPanel compute_log_returns(const PricePanel& panel);

// Writes a panel as a wide-form CSV (`date,<SYM1>,...`) with
// shortest-round-trip numeric encoding. Used by the CLI `returns`
// command; re-reading with load_return_panel reproduces it bit-exactly.
void write_return_panel(const ReturnPanel& panel, const std::string& path);

// Reads a wide-form CSV of returns (values may be zero or negative).
ReturnPanel load_return_panel(const std::string& path);

}  // namespace volcast
