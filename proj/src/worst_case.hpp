#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "rxva/dual.hpp"

namespace rxva::detail {

struct MoveSummary {
    double payoff;
    double cost;
};

// Greedy mass transport shared by the BCVA and FVA recoveries.
//   witness(alpha, i) -> MoveSummary of sample i's maximizer at alpha
//   point(alpha, i)   -> that maximizer as a Point
//   original(i), payoff(Point), cost(Point, i) evaluate the result independently of the witnesses.
template <class Point, class Witness, class PointAt, class Original, class Payoff, class Cost>
WorstCaseDistribution<Point> recover_worst_case(std::size_t N, double alpha_star, bool boundary, double delta,
                                                double dual_value, Witness witness, PointAt point, Original original,
                                                Payoff payoff, Cost cost) {
    WorstCaseDistribution<Point> out;
    out.dual_value = dual_value;
    const double inv_n = 1.0 / static_cast<double>(N);
    auto finish = [&]() {
        std::vector<double> c, f;
        for (const auto& a : out.atoms) {
            c.push_back(a.weight * cost(a.point, a.source));
            f.push_back(a.weight * payoff(a.point));
        }
        out.transport_cost = pairwise_sum(c);
        out.expected_payoff = pairwise_sum(f);
        return out;
    };

    if (delta == 0.0) {
        for (std::size_t i = 0; i < N; ++i) out.atoms.push_back({inv_n, original(i), i});
        return finish();
    }
    if (boundary)
        throw NumericalError("worst case requires an interior dual minimizer; the dual solution sits on the alpha cap");

    auto mean_cost = [&](double alpha, std::vector<MoveSummary>& m) {
        std::vector<double> c(N);
        for (std::size_t i = 0; i < N; ++i) {
            m[i] = witness(alpha, i);
            c[i] = m[i].cost;
        }
        return mean_of(c);
    };

    std::vector<MoveSummary> ma(N), mb(N);
    double alpha_a = 0, alpha_b = 0, ca = 0, cb = 0;
    bool bracketed = false;
    for (double eps = 1e-9; eps <= 0.5; eps *= 4) {
        alpha_a = alpha_star * (1 + eps);
        alpha_b = alpha_star * (1 - eps);
        ca = mean_cost(alpha_a, ma);
        cb = mean_cost(alpha_b, mb);
        if (ca <= delta && delta <= cb) {
            bracketed = true;
            break;
        }
    }
    if (!bracketed)
        throw NumericalError(fmt::format("could not bracket the transport budget around alpha* = {}", alpha_star));

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < N; ++i)
        if (mb[i].cost > ma[i].cost) order.push_back(i);
    auto ratio = [&](std::size_t i) { return (mb[i].payoff - ma[i].payoff) / (mb[i].cost - ma[i].cost); };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return ratio(i) > ratio(j); });

    std::vector<double> moved(N, 0.0);  // mass at the b-state
    double budget = delta - ca;
    for (std::size_t i : order) {
        if (budget <= 0) break;
        double extra = (mb[i].cost - ma[i].cost) * inv_n;
        if (extra <= budget) {
            moved[i] = inv_n;
            budget -= extra;
        } else {
            moved[i] = budget / (mb[i].cost - ma[i].cost);
            out.split_index = static_cast<long>(i);
            out.theta = moved[i];
            budget = 0;
        }
    }
    for (std::size_t i = 0; i < N; ++i) {
        double stay = inv_n - moved[i];
        if (out.split_index == static_cast<long>(i)) {
            out.atoms.push_back({stay, point(alpha_a, i), i});
            out.atoms.push_back({moved[i], point(alpha_b, i), i});
        } else if (moved[i] > 0) {
            out.atoms.push_back({inv_n, point(alpha_b, i), i});
        } else {
            out.atoms.push_back({inv_n, point(alpha_a, i), i});
        }
    }
    return finish();
}

}  // namespace rxva::detail
