#include "rxva/robust_bcva.hpp"

#include <algorithm>
#include <cmath>

#include "rxva/kernels.hpp"
#include "worst_case.hpp"

namespace rxva {

std::string_view case_label(BcvaCase c) {
    static constexpr std::string_view names[] = {"1a", "1b", "1c", "2a", "2b", "2c",
                                                 "3a", "3b", "3c", "4a", "4b", "4c"};
    return names[static_cast<int>(c)];
}

ScalarMove cva_row(double x, double alpha) {
    double v = x + 0.25 / alpha;
    if (v > 0) return {v, 0.5 / alpha};
    return {0.0, 0.0};
}

ScalarMove dva_row(double x, double alpha) {
    if (x > 0) return {0.0, 0.0};
    if (x >= -0.5 / alpha) return {-alpha * x * x, -x};
    return {x + 0.25 / alpha, 0.5 / alpha};
}

BcvaSample PsiWitness::point(const BcvaSample& from) const {
    BcvaSample p{from.x, v1, v2};
    if (tau1 > 0) p.x[static_cast<std::size_t>(tau1) - 1] += w;
    return p;
}

namespace {

// Smallest index of the largest x over [lo, hi] excluding `skip`; 0 if the range is empty.
int argmax_excluding(const std::vector<double>& x, int lo, int hi, int skip) {
    int best = 0;
    for (int i = lo; i <= hi; ++i) {
        if (i == skip) continue;
        if (best == 0 || x[static_cast<std::size_t>(i) - 1] > x[static_cast<std::size_t>(best) - 1]) best = i;
    }
    return best;
}

}  // namespace

BcvaCandidates bcva_candidates(const BcvaSample& s) {
    BcvaCandidates c;
    c.payoff = bcva_payoff(s);
    const int n = static_cast<int>(s.n());
    const int tc = s.yc.index, tf = s.yf.index;
    const int hc = tc != 0, hf = tf != 0;
    auto xv = [&](int i) { return s.x[static_cast<std::size_t>(i) - 1]; };
    auto add = [&](BcvaCase label, bool cva, bool none, int idx, int K, int v1, int v2) {
        c.moves[static_cast<std::size_t>(c.count++)] = {label, cva, none, idx, idx > 0 ? xv(idx) : 0.0, K, v1, v2};
    };

    // Keep the existing default on its date.
    if (hc) {
        if (!hf || tc < tf) add(BcvaCase::c1a, true, false, tc, 0, tc, tf);
        else add(BcvaCase::c3a, true, false, tc, 1, tc, 0);
    }
    if (hf) {
        if (!hc || tf < tc) add(BcvaCase::c1b, false, false, tf, 0, tc, tf);
        else add(BcvaCase::c2b, false, false, tf, 1, 0, tf);
    }
    // Cancel every default.
    {
        BcvaCase label = hc && hf ? BcvaCase::c4c : hc ? BcvaCase::c2c : hf ? BcvaCase::c3c : BcvaCase::c1c;
        add(label, false, true, 0, hc + hf, 0, 0);
    }
    // Counterparty default on a new date, ahead of the firm's, else the firm's default is removed.
    if (int i = argmax_excluding(s.x, 1, hf ? tf - 1 : n, tc); i > 0) add(BcvaCase::c2a, true, false, i, 1 + hc, i, tf);
    if (hf)
        if (int i = argmax_excluding(s.x, tf, n, tc); i > 0) add(BcvaCase::c4a, true, false, i, 2 + hc, i, 0);
    // Firm default on a new date, symmetric.
    if (int j = argmax_excluding(s.x, 1, hc ? tc - 1 : n, tf); j > 0) add(BcvaCase::c3b, false, false, j, 1 + hf, tc, j);
    if (hc)
        if (int j = argmax_excluding(s.x, tc, n, tf); j > 0) add(BcvaCase::c4b, false, false, j, 2 + hf, 0, j);
    return c;
}

double psi_value(const BcvaCandidates& c, double alpha, double s3) {
    double best = -INFINITY;
    for (int k = 0; k < c.count; ++k) {
        const auto& m = c.moves[static_cast<std::size_t>(k)];
        double v = m.none ? 0.0 : (m.cva ? cva_row(m.x, alpha) : dva_row(m.x, alpha)).value;
        v -= alpha * s3 * m.K;
        best = std::max(best, v);
    }
    return best;
}

PsiWitness psi_witness(const BcvaCandidates& c, double alpha, double s3) {
    PsiWitness best;
    best.value = -INFINITY;
    for (int k = 0; k < c.count; ++k) {
        const auto& m = c.moves[static_cast<std::size_t>(k)];
        ScalarMove r{0.0, 0.0};
        if (!m.none) r = m.cva ? cva_row(m.x, alpha) : dva_row(m.x, alpha);
        double v = r.value - alpha * s3 * m.K;
        if (v > best.value) {
            best.value = v;
            best.label = m.label;
            best.K = m.K;
            best.tau1 = m.none ? 0 : m.index;
            best.w = r.w;
            best.v1 = {m.v1};
            best.v2 = {m.v2};
            double u = m.x + r.w;
            best.payoff = m.none ? 0.0 : (m.cva ? std::max(u, 0.0) : std::min(u, 0.0));
            best.cost = r.w * r.w + s3 * m.K;
        }
    }
    return best;
}

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive and finite");
}

void check_s3(double s3) {
    if (!(s3 > 0) || !std::isfinite(s3)) throw ConfigError("S3 must be positive and finite");
}

}  // namespace

PsiWitness psi_alpha_bcva(const BcvaSample& sample, double alpha, double s3) {
    check_alpha(alpha);
    check_s3(s3);
    validate(sample);
    return psi_witness(bcva_candidates(sample), alpha, s3);
}

double dual_objective_bcva(const BcvaDistribution& d, double alpha, double delta, double s3, Exec exec) {
    check_alpha(alpha);
    check_s3(s3);
    return alpha * delta + mean_psi_bcva(prepare_bcva(d, exec), alpha, s3, exec);
}

BcvaDualSolution minimize_dual_bcva(const BcvaDistribution& d, double delta, double s3, const DualOptions& opt) {
    check_s3(s3);
    if (!(delta >= 0) || !std::isfinite(delta)) throw ConfigError("delta must be non-negative");
    auto cands = prepare_bcva(d, opt.exec);
    auto F = [&](double a) { return a * delta + mean_psi_bcva(cands, a, s3, opt.exec); };

    BcvaDualSolution sol;
    sol.delta = delta;
    sol.s3 = s3;
    auto lm = golden_log_minimize(F, opt, sol.trace);
    sol.alpha = lm.alpha;
    sol.value = lm.value;
    sol.boundary = lm.at_upper_cap || lm.at_lower_cap;
    if (delta == 0.0) {
        // With no budget the infimum is the alpha -> infinity limit, where every Psi tends to its payoff.
        sol.boundary = true;
        sol.alpha = opt.alpha_max;
        sol.value = baseline_bcva(d);
        sol.note = "delta = 0: value is the alpha -> infinity limit of F";
    } else if (sol.boundary) {
        sol.note = lm.at_upper_cap ? "minimum at alpha_max" : "minimum at alpha_min";
    }
    sol.witnesses.resize(d.size());
    for_each_index(d.size(), opt.exec, [&](std::size_t i) { sol.witnesses[i] = psi_witness(cands[i], sol.alpha, s3); });
    return sol;
}

BcvaDualSolution robust_unilateral_cva(const BcvaDistribution& d, double delta, double s3, const DualOptions& opt) {
    return minimize_dual_bcva(positive_leg(d), delta, s3, opt);
}

BcvaDualSolution robust_unilateral_dva(const BcvaDistribution& d, double delta, double s3, const DualOptions& opt) {
    auto sol = minimize_dual_bcva(negative_leg(d), delta, s3, opt);
    sol.value = -sol.value;
    return sol;
}

WorstCaseDistribution<BcvaSample> recover_worst_case_bcva(const BcvaDualSolution& sol, const BcvaDistribution& d,
                                                          double delta, double s3, const DualOptions& opt) {
    check_s3(s3);
    auto cands = prepare_bcva(d, opt.exec);
    return detail::recover_worst_case<BcvaSample>(
        d.size(), sol.alpha, sol.boundary, delta, sol.value,
        [&](double a, std::size_t i) {
            auto w = psi_witness(cands[i], a, s3);
            return detail::MoveSummary{w.payoff, w.cost};
        },
        [&](double a, std::size_t i) { return psi_witness(cands[i], a, s3).point(d[i]); },
        [&](std::size_t i) { return d[i]; }, [](const BcvaSample& p) { return bcva_payoff(p); },
        [&](const BcvaSample& p, std::size_t i) { return cost_bcva(p, d[i], s3); });
}

}  // namespace rxva
