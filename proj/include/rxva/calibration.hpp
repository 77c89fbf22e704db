#pragma once

#include <vector>

#include "rxva/common.hpp"
#include "rxva/empirical.hpp"

namespace rxva {

enum class S3Mode {
    pairwise_max,         // max over date pairs of |xbar_i - xbar_j|, i.e. range of the profile
    time_mean_deviation,  // max over dates of |xbar_i - mean(xbar)|
};

// Half the sum of the positive- and negative-profile spreads, floored at 1e-8 max|xbar|
// (1e-8 outright when every profile value is zero).
double calibrate_s3_bcva(const BcvaDistribution& d, S3Mode mode = S3Mode::pairwise_max);
double calibrate_s3_fva(const FvaDistribution& d, S3Mode mode = S3Mode::pairwise_max);

// Same rule on explicit mean profiles.
double s3_from_profiles(const std::vector<double>& pos, const std::vector<double>& neg, S3Mode mode);

struct Matching {
    double cost = 0.0;                    // average cost over matched pairs
    std::vector<std::size_t> assignment;  // row i -> column assignment[i]
};

// Exact minimum-cost perfect matching on a dense m x m row-major matrix, O(m^3).
Matching min_cost_matching(const std::vector<double>& cost, std::size_t m);

std::vector<double> cost_matrix(const BcvaDistribution& a, const BcvaDistribution& b, double s3, Exec exec);
std::vector<double> cost_matrix(const FvaDistribution& a, const FvaDistribution& b, double s3, Exec exec);

Matching min_cost_matching(const BcvaDistribution& a, const BcvaDistribution& b, double s3,
                           Exec exec = Exec::parallel);
Matching min_cost_matching(const FvaDistribution& a, const FvaDistribution& b, double s3, Exec exec = Exec::parallel);

struct RadiusBounds {
    double delta_l = 0.0;
    double delta_u = 0.0;
    double c_star = 0.0;

    // Radii at the given percentages of delta_u.
    std::vector<double> grid(const std::vector<double>& percents) const;
};

RadiusBounds radius_bounds_from_cost(double c_star);
RadiusBounds wasserstein_radius_bounds(const BcvaDistribution& a, const BcvaDistribution& b, double s3,
                                       Exec exec = Exec::parallel);
RadiusBounds wasserstein_radius_bounds(const FvaDistribution& a, const FvaDistribution& b, double s3,
                                       Exec exec = Exec::parallel);

// The first m samples of a distribution, used when a matching would exceed the size cap.
template <class Sample>
EmpiricalDistribution<Sample> head(const EmpiricalDistribution<Sample>& d, std::size_t m) {
    if (m >= d.size()) return d;
    return EmpiricalDistribution<Sample>(std::vector<Sample>(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(m)));
}

}  // namespace rxva
