#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rxva/common.hpp"

namespace rxva {

struct TracePoint {
    double alpha;
    double value;
};

struct DualOptions {
    double alpha_min = 1e-8;
    double alpha_max = 1e8;
    double golden_tol = 1e-8;    // relative, on alpha
    double bisection_tol = 1e-10;
    Exec exec = Exec::parallel;
};

template <class Witness>
struct DualSolution {
    double alpha = 0.0;
    double value = 0.0;
    double delta = 0.0;
    double s3 = 0.0;
    bool boundary = false;
    std::vector<Witness> witnesses;  // per sample, at alpha
    std::vector<TracePoint> trace;
    std::string note;
};

// Minimizes a convex F over log alpha on [alpha_min, alpha_max]: geometric bracket expansion from
// alpha = 1 followed by golden-section search. Every evaluation lands in `trace`; the returned
// point is the best traced one.
struct LineMinimum {
    double alpha;
    double value;
    bool at_upper_cap;
    bool at_lower_cap;
};

LineMinimum golden_log_minimize(const std::function<double(double)>& F, const DualOptions& opt,
                                std::vector<TracePoint>& trace);

template <class Point>
struct WeightedPoint {
    double weight;
    Point point;
    std::size_t source;  // index of the empirical sample it was moved from
};

template <class Point>
struct WorstCaseDistribution {
    std::vector<WeightedPoint<Point>> atoms;
    long split_index = -1;      // sample whose 1/N mass was split, -1 if none
    double theta = 0.0;         // mass of the split sample sitting at its moved point
    double transport_cost = 0.0;
    double expected_payoff = 0.0;
    double dual_value = 0.0;

    double total_weight() const {
        double w = 0.0;
        for (const auto& a : atoms) w += a.weight;
        return w;
    }
};

}  // namespace rxva
