#include "rxva/scenario.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "rxva/rng.hpp"

namespace rxva {

std::vector<double> ExposureCube::positive_part() const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::max(values[i], 0.0);
    return out;
}

std::vector<double> ExposureCube::negative_part() const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::min(values[i], 0.0);
    return out;
}

namespace {

struct PreparedSwap {
    double notional;
    double sign;
    double coupon;
    std::size_t start;
    std::vector<std::size_t> pay;
    std::vector<double> accrual;
};

}  // namespace

ExposureCube price_portfolio(const ShortRatePaths& paths, const HullWhite& model, const Portfolio& portfolio,
                             const DateGrid& grid, Exec exec) {
    const std::size_t nd = grid.times().size();
    if (paths.n_dates() != nd) throw DataError("paths and grid disagree on the number of dates");
    std::vector<PreparedSwap> swaps;
    for (const auto& s : portfolio) {
        auto sch = swap_schedule(s, grid);
        PreparedSwap p{s.notional, s.direction == Direction::receive_fixed ? 1.0 : -1.0, s.coupon, sch.start, sch.pay,
                       {}};
        std::size_t prev = sch.start;
        for (auto k : sch.pay) {
            p.accrual.push_back(grid.t(k) - grid.t(prev));
            prev = k;
        }
        swaps.push_back(std::move(p));
    }

    // P(t_k, t_p | x) = exp(lnA[k][p] - B[k][p] x), deterministic parts shared by every path.
    std::vector<double> lnA(nd * nd, 0.0), Bm(nd * nd, 0.0);
    for (std::size_t k = 0; k < nd; ++k)
        for (std::size_t p = k + 1; p < nd; ++p) {
            lnA[k * nd + p] = model.log_A(grid.t(k), grid.t(p));
            Bm[k * nd + p] = model.B(grid.t(k), grid.t(p));
        }

    ExposureCube cube{paths.n_paths, nd, std::vector<double>(paths.n_paths * nd, 0.0)};
    for_each_index(paths.n_paths, exec, [&](std::size_t i) {
        std::vector<double> P(nd, 1.0);
        for (std::size_t k = 0; k < nd; ++k) {
            double x = paths.x_at(i, k);
            for (std::size_t p = k + 1; p < nd; ++p) P[p] = std::exp(lnA[k * nd + p] - Bm[k * nd + p] * x);
            double total = 0.0;
            for (const auto& s : swaps) {
                if (k >= s.pay.back()) continue;
                double fixed = 0.0;
                std::size_t next = 0, reset = s.start;
                for (std::size_t j = 0; j < s.pay.size(); ++j) {
                    if (s.pay[j] > k) {
                        if (next == 0) next = s.pay[j];
                        fixed += s.accrual[j] * P[s.pay[j]];
                    } else {
                        reset = s.pay[j];
                    }
                }
                double flt;
                if (k < s.start) {
                    flt = P[s.start] - P[s.pay.back()];
                } else {
                    // The running coupon was fixed at the last reset: 1 + L tau = 1 / P(T_reset, T_next).
                    double fixing = reset == k ? P[next]
                                               : std::exp(lnA[reset * nd + next] - Bm[reset * nd + next] * paths.x_at(i, reset));
                    flt = P[next] / fixing - P[s.pay.back()];
                }
                total += s.notional * s.sign * (s.coupon * fixed - flt);
            }
            cube.values[i * nd + k] = total * paths.df_at(i, k);
        }
    });
    return cube;
}

namespace {

int snap_default(const std::vector<double>& surv, double u) {
    // surv[k] = S(t_k) for k = 1..n, non-increasing; first k with S(t_k) <= u.
    auto it = std::upper_bound(surv.begin() + 1, surv.end(), u, [](double v, double s) { return s <= v; });
    if (it == surv.end()) return 0;
    return static_cast<int>(it - surv.begin());
}

std::vector<double> survival_on_grid(const HazardCurve& h, const DateGrid& grid) {
    std::vector<double> s(grid.times().size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = h.survival(grid.t(k));
    return s;
}

}  // namespace

std::vector<int> sample_default_times(const HazardCurve& hazard, const DateGrid& grid, std::size_t n_paths,
                                      std::uint64_t seed, std::uint64_t stream) {
    auto surv = survival_on_grid(hazard, grid);
    std::vector<int> out(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i) {
        auto eng = path_engine(seed, stream, i);
        out[i] = snap_default(surv, open_uniform(eng));
    }
    return out;
}

DefaultDraws sample_default_pair(const HazardCurve& cpty, const HazardCurve& firm, const DateGrid& grid,
                                 std::size_t n_paths, std::uint64_t seed, int max_redraws) {
    auto sc = survival_on_grid(cpty, grid), sf = survival_on_grid(firm, grid);
    DefaultDraws d;
    d.cpty.resize(n_paths);
    d.firm.resize(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i) {
        auto ec = path_engine(seed, Stream::cpty_default, i);
        auto ef = path_engine(seed, Stream::firm_default, i);
        d.cpty[i] = snap_default(sc, open_uniform(ec));
        d.firm[i] = snap_default(sf, open_uniform(ef));
        int tries = 0;
        while (d.cpty[i] != 0 && d.cpty[i] == d.firm[i] && tries < max_redraws) {
            d.firm[i] = snap_default(sf, open_uniform(ef));
            ++tries;
        }
        if (tries > 0) ++d.ties_resampled;
        if (d.cpty[i] != 0 && d.cpty[i] == d.firm[i]) ++d.ties_left;
    }
    return d;
}

void RecoveryConfig::validate() const {
    if (!(rc >= 0 && rc < 1)) throw ConfigError("counterparty recovery must lie in [0, 1)");
    if (!(rf >= 0 && rf < 1)) throw ConfigError("firm recovery must lie in [0, 1)");
}

FundingPaths simulate_funding(const FundingCurve& cost, const FundingCurve& benefit, const DateGrid& grid,
                              std::size_t n_paths, std::uint64_t seed, Exec exec) {
    const std::size_t n = grid.n();
    FundingPaths f{n_paths, n, std::vector<double>(n_paths * n), std::vector<double>(n_paths * n)};
    std::vector<double> fwd_c(n), fwd_b(n), sd_c(n), sd_b(n), var_c(n), var_b(n);
    double vc = 0.0, vb = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        double t0 = grid.t(k - 1), t1 = grid.t(k);
        fwd_c[k - 1] = cost.forward(t0, t1);
        fwd_b[k - 1] = benefit.forward(t0, t1);
        var_c[k - 1] = vc;  // variance of X at the period start
        var_b[k - 1] = vb;
        sd_c[k - 1] = std::sqrt(cost.variance(t0, t1));
        sd_b[k - 1] = std::sqrt(benefit.variance(t0, t1));
        vc += cost.variance(t0, t1);
        vb += benefit.variance(t0, t1);
    }
    bool stochastic = cost.sigma0() > 0 || benefit.sigma0() > 0;
    for_each_index(n_paths, exec, [&](std::size_t i) {
        auto eng = path_engine(seed, Stream::funding, i);
        std::normal_distribution<double> nd01;
        double xc = 0.0, xb = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            double acc = grid.t(k) - grid.t(k - 1);
            f.cost[i * n + k - 1] = fwd_c[k - 1] * std::exp(xc - 0.5 * var_c[k - 1]) * acc;
            f.benefit[i * n + k - 1] = fwd_b[k - 1] * std::exp(xb - 0.5 * var_b[k - 1]) * acc;
            if (stochastic) {
                double z = nd01(eng);
                xc += sd_c[k - 1] * z;
                xb += sd_b[k - 1] * z;
            }
        }
    });
    return f;
}

BcvaDistribution build_bcva_samples(const ExposureCube& cube, const std::vector<int>& cpty_defaults,
                                    const std::vector<int>& firm_defaults, const RecoveryConfig& rec) {
    rec.validate();
    const std::size_t N = cube.n_paths, n = cube.n_dates - 1;
    if (cpty_defaults.size() != N || firm_defaults.size() != N)
        throw DataError("default index vectors do not match the number of paths");
    std::vector<BcvaSample> out(N);
    for (std::size_t i = 0; i < N; ++i) {
        int c = cpty_defaults[i], f = firm_defaults[i];
        if (c < 0 || f < 0 || c > static_cast<int>(n) || f > static_cast<int>(n))
            throw DataError(fmt::format("default index outside the grid on path {}", i));
        auto& s = out[i];
        s.x.resize(n);
        for (std::size_t k = 1; k <= n; ++k)
            s.x[k - 1] = (1 - rec.rc) * cube.positive(i, k) + (1 - rec.rf) * cube.negative(i, k);
        if (c > 0 && (f == 0 || c < f)) s.yc = {c};
        if (f > 0 && (c == 0 || f < c)) s.yf = {f};
    }
    return BcvaDistribution(std::move(out));
}

FvaDistribution build_fva_samples(const ExposureCube& cube, const std::vector<int>& cpty_defaults,
                                  const std::vector<int>& firm_defaults, const FundingPaths& funding) {
    const std::size_t N = cube.n_paths, n = cube.n_dates - 1;
    if (cpty_defaults.size() != N || firm_defaults.size() != N)
        throw DataError("default index vectors do not match the number of paths");
    if (funding.n_paths != N || funding.n != n) throw DataError("funding paths do not match the exposure cube");
    std::vector<FvaSample> out(N);
    for (std::size_t i = 0; i < N; ++i) {
        int c = cpty_defaults[i], f = firm_defaults[i];
        int first = c == 0 ? f : f == 0 ? c : std::min(c, f);
        auto& s = out[i];
        s.z.resize(n);
        for (std::size_t k = 1; k <= n; ++k)
            s.z[k - 1] = funding.cost[i * n + k - 1] * cube.positive(i, k) +
                         funding.benefit[i * n + k - 1] * cube.negative(i, k);
        s.y = {first == 0 ? static_cast<int>(n) : first - 1};
    }
    return FvaDistribution(std::move(out));
}

}  // namespace rxva
