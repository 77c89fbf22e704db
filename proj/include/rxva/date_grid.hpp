#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace rxva {

using Date = std::chrono::year_month_day;

// Accepts ISO "2020-04-20" and US "4/20/20" / "4/20/2020".
Date parse_date(const std::string& s);
std::string format_date(Date d);

// ACT/365F year fraction.
double year_fraction(Date from, Date to);

Date add_months(Date d, int months);

// Tenor strings such as "1y", "6m", "30Y" or a bare number of years.
double parse_tenor(const std::string& s);

// Observation dates t_0 = 0 < t_1 < ... < t_n as year fractions.
class DateGrid {
public:
    explicit DateGrid(std::vector<double> times);

    // Calendar grid starting at the valuation date, stepping by whole months.
    static DateGrid monthly(Date valuation, int step_months, int n_steps);

    std::size_t n() const { return times_.size() - 1; }
    double t(std::size_t k) const { return times_[k]; }
    double horizon() const { return times_.back(); }
    const std::vector<double>& times() const { return times_; }

    bool has_dates() const { return !dates_.empty(); }
    const std::vector<Date>& dates() const { return dates_; }
    // Month step of a calendar grid, 0 otherwise.
    int step_months() const { return step_months_; }

    // Index k with |t_k - t| <= tol, if any.
    std::optional<std::size_t> find(double t, double tol = 1e-9) const;

private:
    std::vector<double> times_;
    std::vector<Date> dates_;
    int step_months_ = 0;
};

}  // namespace rxva
