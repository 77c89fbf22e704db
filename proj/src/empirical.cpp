#include "rxva/empirical.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace rxva {

std::vector<double> DefaultIndicatorVec::materialize(std::size_t n) const {
    std::vector<double> v(n, 0.0);
    if (index > 0) v.at(static_cast<std::size_t>(index) - 1) = 1.0;
    return v;
}

std::vector<double> SurvivalIndicatorVec::materialize(std::size_t n) const {
    std::vector<double> v(n, 0.0);
    for (int k = 0; k < length; ++k) v.at(static_cast<std::size_t>(k)) = 1.0;
    return v;
}

PerturbationVec PerturbationVec::between(DefaultIndicatorVec to, DefaultIndicatorVec from, std::size_t n) {
    PerturbationVec p{std::vector<double>(n, 0.0)};
    if (to.index == from.index) return p;
    if (to.index > 0) p.entries.at(static_cast<std::size_t>(to.index) - 1) = 1.0;
    if (from.index > 0) p.entries.at(static_cast<std::size_t>(from.index) - 1) = -1.0;
    return p;
}

PerturbationVec PerturbationVec::between(SurvivalIndicatorVec to, SurvivalIndicatorVec from, std::size_t n) {
    PerturbationVec p{std::vector<double>(n, 0.0)};
    for (int k = std::min(to.length, from.length); k < std::max(to.length, from.length); ++k)
        p.entries.at(static_cast<std::size_t>(k)) = to.length > from.length ? 1.0 : -1.0;
    return p;
}

double PerturbationVec::squared_norm() const {
    double s = 0.0;
    for (double e : entries) s += e * e;
    return s;
}

template <class Sample>
EmpiricalDistribution<Sample>::EmpiricalDistribution(std::vector<Sample> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw DataError("empirical distribution needs at least one sample");
    std::size_t n = samples_.front().n();
    if (n == 0) throw DataError("samples must have at least one date");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (samples_[i].n() != n) throw DataError(fmt::format("sample {} has {} dates, expected {}", i, samples_[i].n(), n));
        validate(samples_[i]);
    }
}

template class EmpiricalDistribution<BcvaSample>;
template class EmpiricalDistribution<FvaSample>;

void validate(const BcvaSample& s) {
    auto n = static_cast<int>(s.n());
    for (double v : s.x)
        if (!std::isfinite(v)) throw DataError("exposure not finite");
    if (s.yc.index < 0 || s.yc.index > n || s.yf.index < 0 || s.yf.index > n)
        throw DataError("default index outside grid");
    if (s.yc.defaulted() && s.yc.index == s.yf.index) throw DataError("simultaneous default indices");
}

void validate(const FvaSample& s) {
    for (double v : s.z)
        if (!std::isfinite(v)) throw DataError("funding exposure not finite");
    if (s.y.length < 0 || s.y.length > static_cast<int>(s.n())) throw DataError("survival block outside grid");
}

double bcva_payoff(const BcvaSample& s) {
    int tc = s.yc.index, tf = s.yf.index;
    if (tc > 0 && (tf == 0 || tc < tf)) return std::max(s.x[static_cast<std::size_t>(tc) - 1], 0.0);
    if (tf > 0 && (tc == 0 || tf < tc)) return std::min(s.x[static_cast<std::size_t>(tf) - 1], 0.0);
    return 0.0;
}

double fva_payoff(const FvaSample& s) {
    double v = 0.0;
    for (int k = 0; k < s.y.length; ++k) v += s.z[static_cast<std::size_t>(k)];
    return v;
}

double cost_bcva(const BcvaSample& a, const BcvaSample& b, double s3) {
    if (a.n() != b.n()) throw DataError("cost: dimension mismatch");
    double c = 0.0;
    for (std::size_t k = 0; k < a.n(); ++k) c += (a.x[k] - b.x[k]) * (a.x[k] - b.x[k]);
    return c + s3 * (indicator_distance(a.yc, b.yc) + indicator_distance(a.yf, b.yf));
}

double cost_fva(const FvaSample& a, const FvaSample& b, double s3) {
    if (a.n() != b.n()) throw DataError("cost: dimension mismatch");
    double c = 0.0;
    for (std::size_t k = 0; k < a.n(); ++k) c += (a.z[k] - b.z[k]) * (a.z[k] - b.z[k]);
    return c + s3 * indicator_distance(a.y, b.y);
}

namespace {

template <class D, class F>
double mean_over(const D& d, F f) {
    std::vector<double> v(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) v[i] = f(d[i]);
    return mean_of(v);
}

}  // namespace

double baseline_bcva(const BcvaDistribution& d) { return mean_over(d, bcva_payoff); }

double baseline_unilateral_cva(const BcvaDistribution& d) {
    return mean_over(d, [](const BcvaSample& s) { return std::max(bcva_payoff(s), 0.0); });
}

double baseline_unilateral_dva(const BcvaDistribution& d) {
    return -mean_over(d, [](const BcvaSample& s) { return std::min(bcva_payoff(s), 0.0); });
}

double baseline_fva(const FvaDistribution& d) { return mean_over(d, fva_payoff); }
double baseline_fca(const FvaDistribution& d) { return baseline_fva(positive_part(d)); }
double baseline_fba(const FvaDistribution& d) { return baseline_fva(negative_part(d)); }

BcvaDistribution positive_leg(const BcvaDistribution& d) {
    std::vector<BcvaSample> out;
    out.reserve(d.size());
    for (const auto& s : d) {
        BcvaSample t{s.x, s.yc, {}};
        for (auto& v : t.x) v = std::max(v, 0.0);
        // A firm default that came first removes the counterparty leg.
        if (s.yf.defaulted() && (!s.yc.defaulted() || s.yf.index < s.yc.index)) t.yc = {};
        out.push_back(std::move(t));
    }
    return BcvaDistribution(std::move(out));
}

BcvaDistribution negative_leg(const BcvaDistribution& d) {
    std::vector<BcvaSample> out;
    out.reserve(d.size());
    for (const auto& s : d) {
        BcvaSample t{s.x, {}, s.yf};
        for (auto& v : t.x) v = std::min(v, 0.0);
        if (s.yc.defaulted() && (!s.yf.defaulted() || s.yc.index < s.yf.index)) t.yf = {};
        out.push_back(std::move(t));
    }
    return BcvaDistribution(std::move(out));
}

FvaDistribution positive_part(const FvaDistribution& d) {
    std::vector<FvaSample> out;
    out.reserve(d.size());
    for (const auto& s : d) {
        FvaSample t = s;
        for (auto& v : t.z) v = std::max(v, 0.0);
        out.push_back(std::move(t));
    }
    return FvaDistribution(std::move(out));
}

FvaDistribution negative_part(const FvaDistribution& d) {
    std::vector<FvaSample> out;
    out.reserve(d.size());
    for (const auto& s : d) {
        FvaSample t = s;
        for (auto& v : t.z) v = std::min(v, 0.0);
        out.push_back(std::move(t));
    }
    return FvaDistribution(std::move(out));
}

}  // namespace rxva
