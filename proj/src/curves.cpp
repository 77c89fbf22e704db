#include "rxva/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/toms748_solve.hpp>
#include <fmt/format.h>

#include "rxva/common.hpp"

namespace rxva {

namespace {

void check_pillars(const std::vector<double>& p, const char* what) {
    if (p.empty()) throw DataError(fmt::format("{}: no pillars", what));
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!std::isfinite(p[k]) || p[k] <= 0) throw DataError(fmt::format("{}: bad tenor {}", what, p[k]));
        if (k > 0 && !(p[k] > p[k - 1]))
            throw DataError(fmt::format("{}: tenors not ascending at {}y", what, p[k]));
    }
}

// Payment times T, T - 1/f, ... back to (but excluding) 0, in ascending order.
std::vector<double> schedule(double tenor, int per_year) {
    std::vector<double> out;
    double step = 1.0 / per_year;
    for (int j = 0;; ++j) {
        double t = tenor - j * step;
        if (t <= 1e-9) break;
        out.push_back(t);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

template <class F>
double solve_increasing(F f, double lo, double hi) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52),
                                              iters);
    double a = r.first, b = r.second;
    return std::fabs(f(a)) <= std::fabs(f(b)) ? a : b;
}

std::string tenor_name(double t) { return fmt::format("{}y", t); }

}  // namespace

DiscountCurve::DiscountCurve(std::vector<double> pillars, std::vector<double> zero_rates)
    : pillars_(std::move(pillars)), zeros_(std::move(zero_rates)) {
    check_pillars(pillars_, "discount curve");
    if (zeros_.size() != pillars_.size()) throw DataError("discount curve: pillar / rate size mismatch");
    for (double r : zeros_)
        if (!std::isfinite(r)) throw DataError("discount curve: non-finite zero rate");
}

DiscountCurve DiscountCurve::flat(double rate) { return DiscountCurve({1.0}, {rate}); }

double DiscountCurve::df(double t) const {
    if (t <= 0) return 1.0;
    const auto& p = pillars_;
    if (t <= p.front()) return std::exp(-zeros_.front() * t);
    if (t >= p.back()) return std::exp(-zeros_.back() * t);
    auto k = static_cast<std::size_t>(std::upper_bound(p.begin(), p.end(), t) - p.begin());
    double l0 = -zeros_[k - 1] * p[k - 1], l1 = -zeros_[k] * p[k];
    double w = (t - p[k - 1]) / (p[k] - p[k - 1]);
    return std::exp(l0 + w * (l1 - l0));
}

double DiscountCurve::zero_rate(double t) const {
    if (t <= 0) return zeros_.front();
    return -std::log(df(t)) / t;
}

double DiscountCurve::forward(double t) const {
    const auto& p = pillars_;
    if (t < p.front()) return zeros_.front();
    if (t >= p.back()) return zeros_.back();
    auto k = static_cast<std::size_t>(std::upper_bound(p.begin(), p.end(), t) - p.begin());
    return (zeros_[k] * p[k] - zeros_[k - 1] * p[k - 1]) / (p[k] - p[k - 1]);
}

double par_swap_npv(const DiscountCurve& curve, double tenor, double rate, const SwapConventions& conv) {
    auto times = schedule(tenor, conv.fixed_per_year);
    double annuity = 0.0, prev = 0.0;
    for (double t : times) {
        annuity += (t - prev) * curve.df(t);
        prev = t;
    }
    return rate * annuity + curve.df(tenor) - 1.0;
}

DiscountCurve bootstrap_discount_curve(const std::vector<TenorValue>& swap_rates, const SwapConventions& conv) {
    if (conv.fixed_per_year <= 0) throw ConfigError("fixed leg frequency must be positive");
    std::vector<double> pillars, zeros;
    for (const auto& q : swap_rates) pillars.push_back(q.tenor);
    check_pillars(pillars, "swap rates");
    pillars.clear();
    for (const auto& q : swap_rates) {
        if (!std::isfinite(q.value)) throw DataError(fmt::format("swap rate at {} not finite", tenor_name(q.tenor)));
        pillars.push_back(q.tenor);
        zeros.push_back(0.0);
        auto f = [&](double z) {
            zeros.back() = -z / q.tenor;
            return par_swap_npv(DiscountCurve(pillars, zeros), q.tenor, q.value, conv);
        };
        double lo = -20.0, hi = 5.0;
        if (!(f(lo) < 0 && f(hi) > 0))
            throw DataError(fmt::format("bootstrap failed at pillar {}: no positive discount factor reprices the swap",
                                        tenor_name(q.tenor)));
        double z = solve_increasing(f, lo, hi);
        zeros.back() = -z / q.tenor;
    }
    return DiscountCurve(std::move(pillars), std::move(zeros));
}

HazardCurve::HazardCurve(std::vector<double> ends, std::vector<double> lambdas)
    : ends_(std::move(ends)), lambdas_(std::move(lambdas)) {
    check_pillars(ends_, "hazard curve");
    if (lambdas_.size() != ends_.size()) throw DataError("hazard curve: size mismatch");
    for (std::size_t k = 0; k < lambdas_.size(); ++k)
        if (!std::isfinite(lambdas_[k]) || lambdas_[k] < 0)
            throw DataError(fmt::format("hazard curve: negative hazard in bucket ending {}", tenor_name(ends_[k])));
}

HazardCurve HazardCurve::flat(double lambda) { return HazardCurve({1.0}, {lambda}); }

double HazardCurve::survival(double t) const {
    if (t <= 0) return 1.0;
    double acc = 0.0, prev = 0.0;
    for (std::size_t k = 0; k < ends_.size(); ++k) {
        double hi = k + 1 == ends_.size() ? t : std::min(t, ends_[k]);
        if (hi > prev) acc += lambdas_[k] * (hi - prev);
        prev = ends_[k];
        if (t <= ends_[k]) break;
    }
    return std::exp(-acc);
}

double HazardCurve::hazard(double t) const {
    auto it = std::lower_bound(ends_.begin(), ends_.end(), t);
    if (it == ends_.end()) return lambdas_.back();
    return lambdas_[static_cast<std::size_t>(it - ends_.begin())];
}

double cds_npv(const HazardCurve& h, const DiscountCurve& curve, double tenor, double spread, double recovery,
               const CdsConventions& conv) {
    auto times = schedule(tenor, conv.premium_per_year);
    double prot = 0.0, prem = 0.0, prev = 0.0, s_prev = 1.0;
    for (double t : times) {
        double s = h.survival(t), df = curve.df(t);
        prot += (1.0 - recovery) * df * (s_prev - s);
        prem += spread * (t - prev) * df * 0.5 * (s_prev + s);
        prev = t;
        s_prev = s;
    }
    return prot - prem;
}

HazardCurve bootstrap_hazard_curve(const std::vector<TenorValue>& cds_spreads, double recovery,
                                   const DiscountCurve& curve, const CdsConventions& conv) {
    if (!(recovery >= 0 && recovery < 1)) throw ConfigError("recovery must lie in [0, 1)");
    std::vector<double> ends, lambdas;
    for (const auto& q : cds_spreads) ends.push_back(q.tenor);
    check_pillars(ends, "cds spreads");
    ends.clear();
    for (const auto& q : cds_spreads) {
        if (!std::isfinite(q.value) || q.value < 0)
            throw DataError(fmt::format("cds spread at {} must be finite and non-negative", tenor_name(q.tenor)));
        ends.push_back(q.tenor);
        lambdas.push_back(0.0);
        auto f = [&](double lam) {
            lambdas.back() = lam;
            return cds_npv(HazardCurve(ends, lambdas), curve, q.tenor, q.value, recovery, conv);
        };
        double f0 = f(0.0);
        if (f0 > 1e-14)
            throw DataError(fmt::format("negative implied hazard at tenor {}", tenor_name(q.tenor)));
        double lam = 0.0;
        if (f0 < 0) {
            double hi = 1.0;
            while (f(hi) < 0) {
                hi *= 4.0;
                if (hi > 1e4) throw DataError(fmt::format("hazard bootstrap failed at tenor {}", tenor_name(q.tenor)));
            }
            lam = solve_increasing(f, 0.0, hi);
        }
        lambdas.back() = lam;
    }
    return HazardCurve(std::move(ends), std::move(lambdas));
}

FundingCurve::FundingCurve(std::vector<double> pillars, std::vector<double> term_spreads, double sigma0,
                           double sigma10)
    : pillars_(std::move(pillars)), spreads_(std::move(term_spreads)), sigma0_(sigma0), kappa_(0.0) {
    check_pillars(pillars_, "funding curve");
    if (spreads_.size() != pillars_.size()) throw DataError("funding curve: size mismatch");
    for (double s : spreads_)
        if (!std::isfinite(s)) throw DataError("funding curve: non-finite spread");
    if (!(sigma0 >= 0) || !(sigma10 >= 0)) throw DataError("funding curve: negative volatility");
    if (sigma0 > 0 && sigma10 > 0) kappa_ = std::log(sigma0 / sigma10) / 10.0;
}

FundingCurve FundingCurve::flat(double spread) { return FundingCurve({1.0}, {spread}); }

double FundingCurve::cumulative(double t) const {
    const auto& p = pillars_;
    if (t <= p.front()) return spreads_.front() * t;
    std::size_t last = p.size() - 1;
    if (t >= p.back()) {
        double fwd = last == 0 ? spreads_[0]
                               : (spreads_[last] * p[last] - spreads_[last - 1] * p[last - 1]) / (p[last] - p[last - 1]);
        return spreads_[last] * p[last] + fwd * (t - p[last]);
    }
    auto k = static_cast<std::size_t>(std::upper_bound(p.begin(), p.end(), t) - p.begin());
    double i0 = spreads_[k - 1] * p[k - 1], i1 = spreads_[k] * p[k];
    return i0 + (i1 - i0) * (t - p[k - 1]) / (p[k] - p[k - 1]);
}

double FundingCurve::forward(double t0, double t1) const {
    if (!(t1 > t0)) throw DataError("funding forward needs a positive accrual period");
    return (cumulative(t1) - cumulative(t0)) / (t1 - t0);
}

double FundingCurve::vol(double t) const { return sigma0_ * std::exp(-kappa_ * t); }

double FundingCurve::variance(double t0, double t1) const {
    if (kappa_ == 0.0) return sigma0_ * sigma0_ * (t1 - t0);
    return sigma0_ * sigma0_ * (std::exp(-2 * kappa_ * t0) - std::exp(-2 * kappa_ * t1)) / (2 * kappa_);
}

}  // namespace rxva
