#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "volcast/panel.hpp"

namespace testutil {

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        static int counter = 0;
        auto base = std::filesystem::temp_directory_path() / "volcast_tests";
        path_ = base / (std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const {
        return (path_ / name).string();
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path);
    out << contents;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

// Zero-padded synthetic date labels: lexicographic order matches
// chronological order.
inline std::vector<std::string> make_dates(std::size_t n, std::size_t start = 1) {
    std::vector<std::string> dates;
    dates.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "d%06zu", start + i);
        dates.emplace_back(buf);
    }
    return dates;
}

inline volcast::ReturnPanel random_return_panel(unsigned seed, std::size_t rows,
                                                std::size_t assets,
                                                double daily_vol = 0.01) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, daily_vol);
    volcast::ReturnPanel panel;
    panel.dates = make_dates(rows);
    for (std::size_t i = 0; i < assets; ++i) {
        panel.symbols.push_back("A" + std::to_string(i));
    }
    panel.returns.resize(rows * assets);
    for (auto& r : panel.returns) r = normal(rng);
    return panel;
}

inline volcast::PricePanel random_price_panel(unsigned seed, std::size_t rows,
                                              std::size_t assets) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 0.01);
    volcast::PricePanel panel;
    panel.dates = make_dates(rows);
    for (std::size_t i = 0; i < assets; ++i) {
        panel.symbols.push_back("A" + std::to_string(i));
    }
    panel.prices.resize(rows * assets);
    for (std::size_t i = 0; i < assets; ++i) {
        double price = 50.0 + 10.0 * static_cast<double>(i);
        for (std::size_t t = 0; t < rows; ++t) {
            price *= std::exp(normal(rng));
            panel.prices[t * assets + i] = price;
        }
    }
    return panel;
}

}  // namespace testutil
