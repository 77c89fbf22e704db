#pragma once

#include <span>
#include <vector>

#include "rxva/common.hpp"

namespace rxva {

// Grid index of a default, 0 meaning none by the horizon. Dense form is e_index (or zero).
struct DefaultIndicatorVec {
    int index = 0;

    bool defaulted() const { return index != 0; }
    std::vector<double> materialize(std::size_t n) const;
    friend bool operator==(DefaultIndicatorVec, DefaultIndicatorVec) = default;
};

// Survival block of `length` leading ones.
struct SurvivalIndicatorVec {
    int length = 0;

    std::vector<double> materialize(std::size_t n) const;
    friend bool operator==(SurvivalIndicatorVec, SurvivalIndicatorVec) = default;
};

// Difference of two same-kind indicators. For defaults: +1 at plus, -1 at minus (0 = absent).
// For survival blocks: +1 on (from, to] when growing, -1 on (to, from] when shrinking.
struct PerturbationVec {
    std::vector<double> entries;

    static PerturbationVec between(DefaultIndicatorVec to, DefaultIndicatorVec from, std::size_t n);
    static PerturbationVec between(SurvivalIndicatorVec to, SurvivalIndicatorVec from, std::size_t n);
    double squared_norm() const;
};

// Squared Euclidean distance between two default indicators, in index space.
inline int indicator_distance(DefaultIndicatorVec a, DefaultIndicatorVec b) {
    return a.index == b.index ? 0 : static_cast<int>(a.defaulted()) + static_cast<int>(b.defaulted());
}

inline int indicator_distance(SurvivalIndicatorVec a, SurvivalIndicatorVec b) {
    return a.length > b.length ? a.length - b.length : b.length - a.length;
}

struct BcvaSample {
    std::vector<double> x;
    DefaultIndicatorVec yc;
    DefaultIndicatorVec yf;

    std::size_t n() const { return x.size(); }
};

struct FvaSample {
    std::vector<double> z;
    SurvivalIndicatorVec y;

    std::size_t n() const { return z.size(); }
};

template <class Sample>
class EmpiricalDistribution {
public:
    EmpiricalDistribution() = default;
    explicit EmpiricalDistribution(std::vector<Sample> samples);

    std::size_t size() const { return samples_.size(); }
    std::size_t n() const { return samples_.empty() ? 0 : samples_.front().n(); }
    const Sample& operator[](std::size_t i) const { return samples_[i]; }
    const std::vector<Sample>& samples() const { return samples_; }
    auto begin() const { return samples_.begin(); }
    auto end() const { return samples_.end(); }

private:
    std::vector<Sample> samples_;
};

using BcvaDistribution = EmpiricalDistribution<BcvaSample>;
using FvaDistribution = EmpiricalDistribution<FvaSample>;

void validate(const BcvaSample& s);
void validate(const FvaSample& s);

// Which side of the first-to-default race pays.
double bcva_payoff(const BcvaSample& s);
double fva_payoff(const FvaSample& s);

double cost_bcva(const BcvaSample& a, const BcvaSample& b, double s3);
double cost_fva(const FvaSample& a, const FvaSample& b, double s3);

double baseline_bcva(const BcvaDistribution& d);
double baseline_unilateral_cva(const BcvaDistribution& d);
// Reported positive: minus the mean negative-exposure leg.
double baseline_unilateral_dva(const BcvaDistribution& d);
double baseline_fva(const FvaDistribution& d);
double baseline_fca(const FvaDistribution& d);
double baseline_fba(const FvaDistribution& d);

// Leg projections used by the unilateral and cost/benefit variants.
BcvaDistribution positive_leg(const BcvaDistribution& d);
BcvaDistribution negative_leg(const BcvaDistribution& d);
FvaDistribution positive_part(const FvaDistribution& d);
FvaDistribution negative_part(const FvaDistribution& d);

}  // namespace rxva
