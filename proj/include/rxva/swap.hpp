#pragma once

#include <vector>

#include "rxva/date_grid.hpp"

namespace rxva {

enum class Direction { receive_fixed, pay_fixed };

struct SwapSpec {
    double notional = 1.0;
    double maturity = 1.0;  // years from valuation
    Direction direction = Direction::receive_fixed;
    double coupon = 0.0;
    int per_year = 4;
    double issue = 0.0;  // years from valuation

    void validate() const;
};

using Portfolio = std::vector<SwapSpec>;

// Grid indices of a swap's accrual start and payment dates. Each calendar date is matched to the
// nearest grid date within a few days, so month-end rolls on calendar grids are absorbed.
struct SwapSchedule {
    std::size_t start = 0;
    std::vector<std::size_t> pay;  // ascending
};

SwapSchedule swap_schedule(const SwapSpec& s, const DateGrid& grid);

}  // namespace rxva
