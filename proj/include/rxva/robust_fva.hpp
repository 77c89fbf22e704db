#pragma once

#include <vector>

#include "rxva/dual.hpp"
#include "rxva/empirical.hpp"

namespace rxva {

struct FvaPsiWitness {
    double value = 0.0;
    int l = 0;            // perturbed survival block length
    int K = 0;            // |l - original length|
    double w = 0.0;       // move added to each of the first l exposures
    double payoff = 0.0;
    double cost = 0.0;
    double g_lo = 0.0;    // hull of d/dalpha over the active block lengths
    double g_hi = 0.0;

    FvaSample point(const FvaSample& from) const;
};

// Prefix sums of z; Psi needs O(n) per alpha from here.
struct FvaPrepared {
    std::vector<double> prefix;  // prefix[l] = z_1 + ... + z_l
    int m = 0;                   // original block length
};

FvaPrepared fva_prepare(const FvaSample& s);

double psi_value(const FvaPrepared& p, double alpha, double s3);
FvaPsiWitness psi_witness(const FvaPrepared& p, double alpha, double s3);

FvaPsiWitness psi_alpha_fva(const FvaSample& sample, double alpha, double s3);

double dual_objective_fva(const FvaDistribution& d, double alpha, double delta, double s3, Exec exec = Exec::parallel);

struct SubgradientInterval {
    double alpha;
    double lo;
    double hi;
};

SubgradientInterval subgradient_F_fva(const FvaDistribution& d, double alpha, double delta, double s3,
                                      Exec exec = Exec::parallel);

using FvaDualSolution = DualSolution<FvaPsiWitness>;

FvaDualSolution minimize_dual_fva(const FvaDistribution& d, double delta, double s3, const DualOptions& opt = {});
FvaDualSolution robust_fca(const FvaDistribution& d, double delta, double s3, const DualOptions& opt = {});
FvaDualSolution robust_fba(const FvaDistribution& d, double delta, double s3, const DualOptions& opt = {});

WorstCaseDistribution<FvaSample> recover_worst_case_fva(const FvaDualSolution& sol, const FvaDistribution& d,
                                                        double delta, double s3, const DualOptions& opt = {});

}  // namespace rxva
