#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rxva/curves.hpp"
#include "rxva/date_grid.hpp"
#include "rxva/hull_white.hpp"
#include "rxva/swap.hpp"

namespace rxva {

// Header plus data rows; blank lines and lines starting with '#' are skipped.
struct CsvTable {
    std::string path;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

// Parses a numeric cell, reporting file, row and column on failure.
double csv_number(const CsvTable& t, std::size_t row, std::size_t col);

// One snapshot directory. Quotes are stored in percent on disk and converted to decimals here.
struct MarketSnapshot {
    std::vector<TenorValue> swap_rates;
    std::vector<SwaptionQuote> swaptions;
    double cds_ig = 0.0;
    double cds_hy = 0.0;
    std::vector<TenorValue> hy_spreads;
    std::vector<TenorValue> funding_ig;
    std::vector<TenorValue> funding_hy;  // N/A quotes dropped
};

std::vector<TenorValue> read_tenor_values(const std::filesystem::path& path);
std::vector<SwaptionQuote> read_swaption_vols(const std::filesystem::path& path);
MarketSnapshot load_snapshot(const std::filesystem::path& dir);

// Columns issued, notional, maturity, direction, coupon_pct, freq. Dates become year fractions
// from the valuation date; notionals are multiplied by notional_unit.
Portfolio load_portfolio(const std::filesystem::path& path, Date valuation, double notional_unit = 1.0);

}  // namespace rxva
