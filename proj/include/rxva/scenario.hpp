#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "rxva/common.hpp"
#include "rxva/curves.hpp"
#include "rxva/date_grid.hpp"
#include "rxva/empirical.hpp"
#include "rxva/hull_white.hpp"
#include "rxva/swap.hpp"

namespace rxva {

// V[i][k]: portfolio value on path i at t_k after the cash flows paid at t_k, discounted to t_0
// with the pathwise bank account. Dates include t_0.
struct ExposureCube {
    std::size_t n_paths = 0;
    std::size_t n_dates = 0;
    std::vector<double> values;

    double at(std::size_t i, std::size_t k) const { return values[i * n_dates + k]; }
    double positive(std::size_t i, std::size_t k) const { return std::max(at(i, k), 0.0); }
    double negative(std::size_t i, std::size_t k) const { return std::min(at(i, k), 0.0); }

    std::vector<double> positive_part() const;
    std::vector<double> negative_part() const;
};

ExposureCube price_portfolio(const ShortRatePaths& paths, const HullWhite& model, const Portfolio& portfolio,
                             const DateGrid& grid, Exec exec = Exec::parallel);

// Snap continuous default times to grid indices: the first k >= 1 with tau <= t_k, 0 past the horizon.
std::vector<int> sample_default_times(const HazardCurve& hazard, const DateGrid& grid, std::size_t n_paths,
                                      std::uint64_t seed, std::uint64_t stream);

struct DefaultDraws {
    std::vector<int> cpty;
    std::vector<int> firm;
    std::size_t ties_resampled = 0;
    std::size_t ties_left = 0;
};

// Independent counterparty and firm defaults. A same-date tie redraws the firm's uniform from its
// own stream (up to max_redraws times), which leaves both marginals unchanged.
DefaultDraws sample_default_pair(const HazardCurve& cpty, const HazardCurve& firm, const DateGrid& grid,
                                 std::size_t n_paths, std::uint64_t seed, int max_redraws = 64);

struct RecoveryConfig {
    double rc = 0.4;
    double rf = 0.4;

    void validate() const;
};

// Per-period funding rates times accrual: cost[i * n + (k-1)] applies on (t_{k-1}, t_k].
struct FundingPaths {
    std::size_t n_paths = 0;
    std::size_t n = 0;
    std::vector<double> cost;
    std::vector<double> benefit;
};

// Lognormal spreads s(t) = F(t, t+dt) exp(X(t) - Var X(t) / 2), fixed at each period start,
// with X a Gaussian process of variance rate vol(t)^2. Cost and benefit share the shocks.
FundingPaths simulate_funding(const FundingCurve& cost, const FundingCurve& benefit, const DateGrid& grid,
                              std::size_t n_paths, std::uint64_t seed, Exec exec = Exec::parallel);

BcvaDistribution build_bcva_samples(const ExposureCube& cube, const std::vector<int>& cpty_defaults,
                                    const std::vector<int>& firm_defaults, const RecoveryConfig& rec);

FvaDistribution build_fva_samples(const ExposureCube& cube, const std::vector<int>& cpty_defaults,
                                  const std::vector<int>& firm_defaults, const FundingPaths& funding);

}  // namespace rxva
