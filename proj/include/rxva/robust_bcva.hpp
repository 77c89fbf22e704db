#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "rxva/dual.hpp"
#include "rxva/empirical.hpp"

namespace rxva {

// Which indicator moves the adversary makes, and which leg ends up paying.
//   1x: indicators unchanged; 2x: counterparty indicator moved; 3x: firm indicator moved; 4x: both.
//   a: counterparty default first (CVA leg), b: firm default first (DVA leg),
//   c: all defaults cancelled (no leg pays).
enum class BcvaCase { c1a, c1b, c1c, c2a, c2b, c2c, c3a, c3b, c3c, c4a, c4b, c4c };

std::string_view case_label(BcvaCase c);

struct PsiWitness {
    double value = 0.0;
    BcvaCase label = BcvaCase::c1c;
    int K = 0;             // number of squared unit indicator changes
    int tau1 = 0;          // coordinate carrying the exposure move, 0 if none
    double w = 0.0;        // size of that move
    DefaultIndicatorVec v1, v2;
    double payoff = 0.0;   // payoff at the perturbed point
    double cost = 0.0;     // transport cost w^2 + S3 K

    BcvaSample point(const BcvaSample& from) const;
};

// Per-sample candidate moves. They depend on the sample only, not on alpha, so the dual objective
// costs O(1) per sample and alpha once these are built.
struct BcvaCandidates {
    struct Move {
        BcvaCase label;
        bool cva;   // exposure row: true -> [x + 1/(4a)]^+, false -> the negative-leg row
        bool none;  // payoff identically zero
        int index;  // coordinate, 1-based
        double x;
        int K;
        int v1, v2;
    };
    std::array<Move, 8> moves{};
    int count = 0;
    double payoff = 0.0;
};

BcvaCandidates bcva_candidates(const BcvaSample& s);

// Closed-form scalar suprema of the exposure sub-problems.
struct ScalarMove {
    double value;
    double w;
};
ScalarMove cva_row(double x, double alpha);
ScalarMove dva_row(double x, double alpha);

double psi_value(const BcvaCandidates& c, double alpha, double s3);
PsiWitness psi_witness(const BcvaCandidates& c, double alpha, double s3);

PsiWitness psi_alpha_bcva(const BcvaSample& sample, double alpha, double s3);

double dual_objective_bcva(const BcvaDistribution& d, double alpha, double delta, double s3,
                           Exec exec = Exec::parallel);

using BcvaDualSolution = DualSolution<PsiWitness>;

BcvaDualSolution minimize_dual_bcva(const BcvaDistribution& d, double delta, double s3, const DualOptions& opt = {});

BcvaDualSolution robust_unilateral_cva(const BcvaDistribution& d, double delta, double s3,
                                       const DualOptions& opt = {});
// Value reported with the DVA sign convention (non-negative; minus the robust negative-leg value).
BcvaDualSolution robust_unilateral_dva(const BcvaDistribution& d, double delta, double s3,
                                       const DualOptions& opt = {});

WorstCaseDistribution<BcvaSample> recover_worst_case_bcva(const BcvaDualSolution& sol, const BcvaDistribution& d,
                                                          double delta, double s3, const DualOptions& opt = {});

}  // namespace rxva
