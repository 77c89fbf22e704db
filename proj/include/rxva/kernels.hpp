#pragma once

#include <vector>

#include "rxva/common.hpp"
#include "rxva/robust_bcva.hpp"
#include "rxva/robust_fva.hpp"

namespace rxva {

// Data-parallel inner loops. Each per-element result is written to its own slot and reduced with
// pairwise_sum, so Exec::serial (the reference) and Exec::parallel agree bitwise.

double mean_psi_bcva(const std::vector<BcvaCandidates>& c, double alpha, double s3, Exec exec);
double mean_psi_fva(const std::vector<FvaPrepared>& p, double alpha, double s3, Exec exec);

struct Hull {
    double lo;
    double hi;
};
Hull mean_subgradient_fva(const std::vector<FvaPrepared>& p, double alpha, double s3, Exec exec);

std::vector<BcvaCandidates> prepare_bcva(const BcvaDistribution& d, Exec exec);
std::vector<FvaPrepared> prepare_fva(const FvaDistribution& d, Exec exec);

}  // namespace rxva
