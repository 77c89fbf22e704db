#include "rxva/robust_fva.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "rxva/kernels.hpp"
#include "worst_case.hpp"

namespace rxva {

FvaSample FvaPsiWitness::point(const FvaSample& from) const {
    FvaSample p{from.z, {l}};
    for (int k = 0; k < l; ++k) p.z[static_cast<std::size_t>(k)] += w;
    return p;
}

FvaPrepared fva_prepare(const FvaSample& s) {
    FvaPrepared p;
    p.prefix.assign(s.n() + 1, 0.0);
    for (std::size_t k = 0; k < s.n(); ++k) p.prefix[k + 1] = p.prefix[k] + s.z[k];
    p.m = s.y.length;
    return p;
}

namespace {

inline double h_value(const FvaPrepared& p, int l, double alpha, double s3) {
    return l / (4 * alpha) + (p.prefix[static_cast<std::size_t>(l)] - p.prefix[static_cast<std::size_t>(p.m)]) -
           alpha * s3 * std::abs(l - p.m);
}

void check_args(double alpha, double s3) {
    if (!(alpha > 0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive and finite");
    if (!(s3 > 0) || !std::isfinite(s3)) throw ConfigError("S3 must be positive and finite");
}

}  // namespace

double psi_value(const FvaPrepared& p, double alpha, double s3) {
    const int n = static_cast<int>(p.prefix.size()) - 1;
    double best = -INFINITY;
    for (int l = 0; l <= n; ++l) best = std::max(best, h_value(p, l, alpha, s3));
    return p.prefix[static_cast<std::size_t>(p.m)] + best;
}

FvaPsiWitness psi_witness(const FvaPrepared& p, double alpha, double s3) {
    const int n = static_cast<int>(p.prefix.size()) - 1;
    double best = -INFINITY;
    int arg = 0;
    for (int l = 0; l <= n; ++l) {
        double h = h_value(p, l, alpha, s3);
        if (h > best) {
            best = h;
            arg = l;
        }
    }
    FvaPsiWitness w;
    w.value = p.prefix[static_cast<std::size_t>(p.m)] + best;
    w.l = arg;
    w.K = std::abs(arg - p.m);
    w.w = 0.5 / alpha;
    if (arg == 0) w.w = 0.0;
    w.payoff = p.prefix[static_cast<std::size_t>(arg)] + arg * w.w;
    w.cost = arg * w.w * w.w + s3 * w.K;
    // Active set: block lengths within rounding of the maximum.
    double tol = 1e-12 * (1.0 + std::fabs(best));
    w.g_lo = INFINITY;
    w.g_hi = -INFINITY;
    for (int l = 0; l <= n; ++l) {
        if (h_value(p, l, alpha, s3) < best - tol) continue;
        double g = -l / (4 * alpha * alpha) - s3 * std::abs(l - p.m);
        w.g_lo = std::min(w.g_lo, g);
        w.g_hi = std::max(w.g_hi, g);
    }
    return w;
}

FvaPsiWitness psi_alpha_fva(const FvaSample& sample, double alpha, double s3) {
    check_args(alpha, s3);
    validate(sample);
    return psi_witness(fva_prepare(sample), alpha, s3);
}

double dual_objective_fva(const FvaDistribution& d, double alpha, double delta, double s3, Exec exec) {
    check_args(alpha, s3);
    return alpha * delta + mean_psi_fva(prepare_fva(d, exec), alpha, s3, exec);
}

SubgradientInterval subgradient_F_fva(const FvaDistribution& d, double alpha, double delta, double s3, Exec exec) {
    check_args(alpha, s3);
    auto h = mean_subgradient_fva(prepare_fva(d, exec), alpha, s3, exec);
    return {alpha, delta + h.lo, delta + h.hi};
}

FvaDualSolution minimize_dual_fva(const FvaDistribution& d, double delta, double s3, const DualOptions& opt) {
    check_args(1.0, s3);
    if (!(delta >= 0) || !std::isfinite(delta)) throw ConfigError("delta must be non-negative");
    auto prep = prepare_fva(d, opt.exec);
    FvaDualSolution sol;
    sol.delta = delta;
    sol.s3 = s3;
    auto F = [&](double a) {
        double v = a * delta + mean_psi_fva(prep, a, s3, opt.exec);
        sol.trace.push_back({a, v});
        return v;
    };
    auto G = [&](double a) {
        auto h = mean_subgradient_fva(prep, a, s3, opt.exec);
        return SubgradientInterval{a, delta + h.lo, delta + h.hi};
    };

    double lo = opt.alpha_min, hi = opt.alpha_max;
    auto g_hi = G(hi), g_lo = G(lo);
    if (delta == 0.0) {
        F(hi);
        sol.alpha = hi;
        sol.boundary = true;
        sol.value = baseline_fva(d);
        sol.note = "delta = 0: value is the alpha -> infinity limit of F";
    } else if (g_hi.hi < 0) {
        sol.alpha = hi;
        sol.value = F(hi);
        sol.boundary = true;
        sol.note = "subgradient negative at alpha_max";
    } else if (g_lo.lo > 0) {
        sol.alpha = lo;
        sol.value = F(lo);
        sol.boundary = true;
        sol.note = "subgradient positive at alpha_min";
    } else {
        bool exact = false;
        double mid = lo;
        if (g_lo.hi >= 0) {
            mid = lo;
            exact = true;
        } else if (g_hi.lo <= 0) {
            mid = hi;
            exact = true;
        }
        while (!exact && std::log(hi / lo) > opt.bisection_tol) {
            mid = std::sqrt(lo * hi);
            auto g = G(mid);
            if (g.lo <= 0 && 0 <= g.hi) {
                exact = true;
            } else if (g.hi < 0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if (exact) {
            sol.alpha = mid;
            sol.value = F(mid);
            sol.note = "0 in subgradient";
        } else {
            double jump = G(hi).lo - G(lo).hi;
            if (jump > 1e-8 * (1.0 + delta)) {
                // The sign change sits on a kink narrower than the tolerance: polish F on [lo, hi].
                double a = lo, b = hi;
                const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
                double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
                double f1 = F(x1), f2 = F(x2);
                for (int it = 0; it < 60 && b - a > 1e-15 * b; ++it) {
                    if (f1 <= f2) {
                        b = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = b - invphi * (b - a);
                        f1 = F(x1);
                    } else {
                        a = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = a + invphi * (b - a);
                        f2 = F(x2);
                    }
                }
                sol.note = "kink: bisection interval straddles the sign change, golden-section polish";
            } else {
                F(std::sqrt(lo * hi));
                sol.note = "bisection converged";
            }
            F(lo);
            F(hi);
            auto best = std::min_element(sol.trace.begin(), sol.trace.end(),
                                         [](const TracePoint& p, const TracePoint& q) { return p.value < q.value; });
            sol.alpha = best->alpha;
            sol.value = best->value;
        }
    }
    sol.witnesses.resize(d.size());
    for_each_index(d.size(), opt.exec, [&](std::size_t i) { sol.witnesses[i] = psi_witness(prep[i], sol.alpha, s3); });
    return sol;
}

FvaDualSolution robust_fca(const FvaDistribution& d, double delta, double s3, const DualOptions& opt) {
    return minimize_dual_fva(positive_part(d), delta, s3, opt);
}

FvaDualSolution robust_fba(const FvaDistribution& d, double delta, double s3, const DualOptions& opt) {
    return minimize_dual_fva(negative_part(d), delta, s3, opt);
}

WorstCaseDistribution<FvaSample> recover_worst_case_fva(const FvaDualSolution& sol, const FvaDistribution& d,
                                                        double delta, double s3, const DualOptions& opt) {
    check_args(1.0, s3);
    auto prep = prepare_fva(d, opt.exec);
    return detail::recover_worst_case<FvaSample>(
        d.size(), sol.alpha, sol.boundary, delta, sol.value,
        [&](double a, std::size_t i) {
            auto w = psi_witness(prep[i], a, s3);
            return detail::MoveSummary{w.payoff, w.cost};
        },
        [&](double a, std::size_t i) { return psi_witness(prep[i], a, s3).point(d[i]); },
        [&](std::size_t i) { return d[i]; }, [](const FvaSample& p) { return fva_payoff(p); },
        [&](const FvaSample& p, std::size_t i) { return cost_fva(p, d[i], s3); });
}

}  // namespace rxva
