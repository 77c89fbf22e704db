#include "rxva/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

namespace rxva {

namespace {

std::string trim(std::string s) {
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

bool missing(const std::string& s) {
    auto l = lower(s);
    return l.empty() || l == "n/a" || l == "na";
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t j = 0; j < header.size(); ++j)
        if (lower(header[j]) == lower(name)) return j;
    throw DataError(fmt::format("{}: missing column '{}'", path, name));
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
    CsvTable t;
    t.path = path.string();
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto cells = split(s);
        if (t.header.empty()) {
            t.header = std::move(cells);
            continue;
        }
        if (cells.size() != t.header.size())
            throw DataError(fmt::format("{}: row {} has {} fields, expected {}", t.path, t.rows.size() + 1,
                                        cells.size(), t.header.size()));
        t.rows.push_back(std::move(cells));
    }
    if (t.header.empty()) throw DataError(fmt::format("{}: empty file", t.path));
    if (t.rows.empty()) throw DataError(fmt::format("{}: no data rows", t.path));
    return t;
}

double csv_number(const CsvTable& t, std::size_t row, std::size_t col) {
    const auto& s = t.rows[row][col];
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
        throw DataError(fmt::format("{}: row {} column '{}': '{}' is not a number", t.path, row + 1, t.header[col], s));
    return v;
}

namespace {

double tenor_cell(const CsvTable& t, std::size_t row, std::size_t col) {
    try {
        return parse_tenor(t.rows[row][col]);
    } catch (const Error& e) {
        throw DataError(fmt::format("{}: row {} column '{}': {}", t.path, row + 1, t.header[col], e.what()));
    }
}

std::vector<TenorValue> tenor_column(const CsvTable& t, std::size_t col) {
    std::vector<TenorValue> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (missing(t.rows[r][col])) continue;
        out.push_back({tenor_cell(t, r, 0), csv_number(t, r, col) / 100.0});
    }
    return out;
}

}  // namespace

std::vector<TenorValue> read_tenor_values(const std::filesystem::path& path) {
    auto t = read_csv(path);
    if (t.header.size() < 2) throw DataError(fmt::format("{}: expected tenor,value columns", t.path));
    return tenor_column(t, 1);
}

std::vector<SwaptionQuote> read_swaption_vols(const std::filesystem::path& path) {
    auto t = read_csv(path);
    if (t.header.size() < 2) throw DataError(fmt::format("{}: expected expiry plus tenor columns", t.path));
    std::vector<double> tenors;
    for (std::size_t j = 1; j < t.header.size(); ++j) {
        try {
            tenors.push_back(parse_tenor(t.header[j]));
        } catch (const Error& e) {
            throw DataError(fmt::format("{}: header column {}: {}", t.path, j + 1, e.what()));
        }
    }
    std::vector<SwaptionQuote> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        double expiry = tenor_cell(t, r, 0);
        for (std::size_t j = 1; j < t.header.size(); ++j) {
            if (missing(t.rows[r][j])) continue;
            out.push_back({expiry, tenors[j - 1], csv_number(t, r, j) / 100.0});
        }
    }
    return out;
}

MarketSnapshot load_snapshot(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw DataError(fmt::format("snapshot directory {} not found", dir.string()));
    MarketSnapshot s;
    s.swap_rates = read_tenor_values(dir / "swap_rates.csv");
    s.swaptions = read_swaption_vols(dir / "swaption_vols.csv");
    auto cds = read_csv(dir / "cds_index.csv");
    bool ig = false, hy = false;
    for (std::size_t r = 0; r < cds.rows.size(); ++r) {
        auto name = lower(cds.rows[r][0]);
        double v = csv_number(cds, r, 1) / 100.0;
        if (name == "ig") s.cds_ig = v, ig = true;
        else if (name == "hy") s.cds_hy = v, hy = true;
        else throw DataError(fmt::format("{}: row {}: unknown index '{}'", cds.path, r + 1, cds.rows[r][0]));
    }
    if (!ig || !hy) throw DataError(fmt::format("{}: needs both IG and HY rows", cds.path));
    s.hy_spreads = read_tenor_values(dir / "hy_spreads.csv");
    auto f = read_csv(dir / "funding_spreads.csv");
    s.funding_ig = tenor_column(f, f.column("ig_pct"));
    s.funding_hy = tenor_column(f, f.column("hy_pct"));
    return s;
}

Portfolio load_portfolio(const std::filesystem::path& path, Date valuation, double notional_unit) {
    if (!(notional_unit > 0)) throw ConfigError("notional unit must be positive");
    auto t = read_csv(path);
    auto c_issued = t.column("issued"), c_notional = t.column("notional"), c_maturity = t.column("maturity"),
         c_dir = t.column("direction"), c_coupon = t.column("coupon_pct"), c_freq = t.column("freq");
    Portfolio out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        auto where = [&](std::size_t c) { return fmt::format("{}: row {} column '{}'", t.path, r + 1, t.header[c]); };
        SwapSpec s;
        try {
            s.issue = year_fraction(valuation, parse_date(row[c_issued]));
        } catch (const Error& e) {
            throw DataError(fmt::format("{}: {}", where(c_issued), e.what()));
        }
        try {
            s.maturity = year_fraction(valuation, parse_date(row[c_maturity]));
        } catch (const Error& e) {
            throw DataError(fmt::format("{}: {}", where(c_maturity), e.what()));
        }
        s.notional = csv_number(t, r, c_notional) * notional_unit;
        auto d = lower(row[c_dir]);
        if (d == "rec" || d == "receive") s.direction = Direction::receive_fixed;
        else if (d == "pay") s.direction = Direction::pay_fixed;
        else throw DataError(fmt::format("{}: expected Rec or Pay, got '{}'", where(c_dir), row[c_dir]));
        s.coupon = csv_number(t, r, c_coupon) / 100.0;
        auto fq = lower(row[c_freq]);
        if (fq == "quarterly") s.per_year = 4;
        else if (fq == "semiannual" || fq == "semi-annual") s.per_year = 2;
        else if (fq == "annual") s.per_year = 1;
        else if (fq == "monthly") s.per_year = 12;
        else throw DataError(fmt::format("{}: unknown frequency '{}'", where(c_freq), row[c_freq]));
        try {
            s.validate();
        } catch (const Error& e) {
            throw DataError(fmt::format("{}: row {}: {}", t.path, r + 1, e.what()));
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace rxva
