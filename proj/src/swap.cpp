#include "rxva/swap.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "rxva/common.hpp"

namespace rxva {

namespace {

constexpr double kSnap = 10.0 / 365.0;

std::size_t snap(const DateGrid& grid, double t, const char* what) {
    auto hit = grid.find(t, kSnap);
    if (!hit) {
        if (t > grid.horizon() + kSnap)
            throw DataError(fmt::format("swap {} {:.4f}y beyond grid end {:.4f}y", what, t, grid.horizon()));
        throw DataError(fmt::format("swap {} {:.4f}y does not fall on a grid date", what, t));
    }
    // find() returns the first date inside the window; prefer the closest one.
    std::size_t k = *hit;
    while (k + 1 <= grid.n() && std::fabs(grid.t(k + 1) - t) < std::fabs(grid.t(k) - t)) ++k;
    return k;
}

}  // namespace

void SwapSpec::validate() const {
    if (!(notional > 0)) throw DataError("swap notional must be positive");
    if (!(maturity > issue)) throw DataError("swap maturity must follow issue");
    if (issue < 0) throw DataError("forward-dated issue only; issue before valuation not supported");
    if (per_year <= 0 || 12 % per_year != 0) throw DataError("payment frequency must divide 12");
    if (!std::isfinite(coupon)) throw DataError("swap coupon not finite");
}

SwapSchedule swap_schedule(const SwapSpec& s, const DateGrid& grid) {
    s.validate();
    SwapSchedule out;
    out.start = snap(grid, s.issue, "issue");
    std::size_t m = snap(grid, s.maturity, "maturity");
    if (grid.step_months() > 0) {
        // Calendar grid: roll back whole months from maturity.
        int months = 12 / s.per_year;
        if (months % grid.step_months() != 0)
            throw DataError("swap payment frequency is not a multiple of the grid step");
        auto stride = static_cast<std::size_t>(months / grid.step_months());
        for (std::size_t p = m; p > out.start; p = p >= stride ? p - stride : 0) out.pay.push_back(p);
        std::reverse(out.pay.begin(), out.pay.end());
    } else {
        int periods = static_cast<int>(std::lround((s.maturity - s.issue) * s.per_year));
        if (periods < 1) periods = 1;
        for (int j = periods - 1; j >= 1; --j)
            out.pay.push_back(snap(grid, s.maturity - j / double(s.per_year), "payment"));
        out.pay.push_back(m);
    }
    std::size_t prev = out.start;
    for (auto p : out.pay) {
        if (p <= prev) throw DataError("swap schedule collapses on the grid; grid too coarse for the payment frequency");
        prev = p;
    }
    return out;
}

}  // namespace rxva
