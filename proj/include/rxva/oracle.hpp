#pragma once

#include <functional>
#include <vector>

#include "rxva/empirical.hpp"

namespace rxva::oracle {

// The five scalar exposure sub-problems:
//   row1: sup_w  w|y| - a w^2
//   row2: sup_{w <= x}  w|y| - a w^2
//   row3: sup_w  (w + x)^+ - a w^2
//   row4: sup_w  (w + x)^- - a w^2
//   row5: row4 evaluated at the exposure of a moved default date
enum class Row { row1, row2, row3, row4, row5 };

struct ScalarTerms {
    double x = 0.0;       // exposure at the relevant date
    double y_norm = 1.0;  // |y| for rows 1 and 2
};

double scalar_subproblem(Row row, const ScalarTerms& t, double alpha);
// Dense-grid maximization of the same objective: 1e5 points on half-width 10/a max(1, |x|),
// refined twice around the best point.
double scalar_subproblem_grid(Row row, const ScalarTerms& t, double alpha);

// Exhaustive enumeration of both default indicators (n <= 6).
double brute_psi_bcva(const BcvaSample& s, double alpha, double s3);
// Exhaustive enumeration of survival block lengths (n <= 6).
double brute_psi_fva(const FvaSample& s, double alpha, double s3);

struct GridMin {
    double alpha;
    double value;
};

// 1e5 log-spaced alphas on [1e-8, 1e8], then 1e5 linear points between the neighbours of the best.
GridMin grid_dual_scan(const std::function<double(double)>& F);
GridMin grid_dual_scan(const BcvaDistribution& d, double delta, double s3);
GridMin grid_dual_scan(const FvaDistribution& d, double delta, double s3);

// Minimum average cost over all permutations (m <= 8).
double brute_matching(const std::vector<double>& cost, std::size_t m);

}  // namespace rxva::oracle
