#include "rxva/date_grid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

#include <fmt/format.h>

#include "rxva/common.hpp"

namespace rxva {

namespace {

int to_int(const std::string& s, const std::string& whole) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw DataError(fmt::format("bad date '{}'", whole));
    return std::stoi(s);
}

}  // namespace

Date parse_date(const std::string& s) {
    int y = 0;
    unsigned m = 0, d = 0;
    if (auto dash = s.find('-'); dash != std::string::npos && dash == 4) {
        auto dash2 = s.find('-', 5);
        if (dash2 == std::string::npos) throw DataError(fmt::format("bad date '{}'", s));
        y = to_int(s.substr(0, 4), s);
        m = to_int(s.substr(5, dash2 - 5), s);
        d = to_int(s.substr(dash2 + 1), s);
    } else {
        auto a = s.find('/');
        auto b = a == std::string::npos ? a : s.find('/', a + 1);
        if (b == std::string::npos) throw DataError(fmt::format("bad date '{}'", s));
        m = to_int(s.substr(0, a), s);
        d = to_int(s.substr(a + 1, b - a - 1), s);
        std::string ys = s.substr(b + 1);
        y = to_int(ys, s);
        if (ys.size() <= 2) y += 2000;
    }
    Date out{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!out.ok()) throw DataError(fmt::format("bad date '{}'", s));
    return out;
}

std::string format_date(Date d) {
    return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(d.year()),
                       static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
}

double year_fraction(Date from, Date to) {
    auto days = (std::chrono::sys_days{to} - std::chrono::sys_days{from}).count();
    return static_cast<double>(days) / 365.0;
}

Date add_months(Date d, int months) {
    auto ym = std::chrono::year_month{d.year(), d.month()} + std::chrono::months{months};
    auto last = std::chrono::year_month_day_last{ym.year(), std::chrono::month_day_last{ym.month()}};
    auto day = std::min(d.day(), last.day());
    return Date{ym.year(), ym.month(), day};
}

double parse_tenor(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(c));
    if (s.empty()) throw DataError("empty tenor");
    double scale = 1.0;
    if (s.back() == 'y') {
        s.pop_back();
    } else if (s.back() == 'm') {
        s.pop_back();
        scale = 1.0 / 12.0;
    }
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size() || !(v > 0)) throw DataError("");
        return v * scale;
    } catch (const std::exception&) {
        throw DataError(fmt::format("bad tenor '{}'", raw));
    }
}

DateGrid::DateGrid(std::vector<double> times) : times_(std::move(times)) {
    if (times_.size() < 2) throw DataError("date grid needs at least one date after t_0");
    if (times_[0] != 0.0) throw DataError("date grid must start at t_0 = 0");
    for (std::size_t k = 1; k < times_.size(); ++k)
        if (!(times_[k] > times_[k - 1]))
            throw DataError(fmt::format("date grid not strictly increasing at index {}", k));
}

DateGrid DateGrid::monthly(Date valuation, int step_months, int n_steps) {
    if (step_months <= 0 || n_steps <= 0) throw ConfigError("grid step and length must be positive");
    std::vector<double> t{0.0};
    std::vector<Date> d{valuation};
    for (int k = 1; k <= n_steps; ++k) {
        Date dk = add_months(valuation, k * step_months);
        d.push_back(dk);
        t.push_back(year_fraction(valuation, dk));
    }
    DateGrid g(std::move(t));
    g.dates_ = std::move(d);
    g.step_months_ = step_months;
    return g;
}

std::optional<std::size_t> DateGrid::find(double t, double tol) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), t - tol);
    if (it != times_.end() && std::fabs(*it - t) <= tol) return static_cast<std::size_t>(it - times_.begin());
    return std::nullopt;
}

}  // namespace rxva
