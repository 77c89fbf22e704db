#include "rxva/kernels.hpp"

namespace rxva {

double mean_psi_bcva(const std::vector<BcvaCandidates>& c, double alpha, double s3, Exec exec) {
    std::vector<double> v(c.size());
    for_each_index(c.size(), exec, [&](std::size_t i) { v[i] = psi_value(c[i], alpha, s3); });
    return mean_of(v);
}

double mean_psi_fva(const std::vector<FvaPrepared>& p, double alpha, double s3, Exec exec) {
    std::vector<double> v(p.size());
    for_each_index(p.size(), exec, [&](std::size_t i) { v[i] = psi_value(p[i], alpha, s3); });
    return mean_of(v);
}

Hull mean_subgradient_fva(const std::vector<FvaPrepared>& p, double alpha, double s3, Exec exec) {
    std::vector<double> lo(p.size()), hi(p.size());
    for_each_index(p.size(), exec, [&](std::size_t i) {
        auto w = psi_witness(p[i], alpha, s3);
        lo[i] = w.g_lo;
        hi[i] = w.g_hi;
    });
    return {mean_of(lo), mean_of(hi)};
}

std::vector<BcvaCandidates> prepare_bcva(const BcvaDistribution& d, Exec exec) {
    std::vector<BcvaCandidates> out(d.size());
    for_each_index(d.size(), exec, [&](std::size_t i) { out[i] = bcva_candidates(d[i]); });
    return out;
}

std::vector<FvaPrepared> prepare_fva(const FvaDistribution& d, Exec exec) {
    std::vector<FvaPrepared> out(d.size());
    for_each_index(d.size(), exec, [&](std::size_t i) { out[i] = fva_prepare(d[i]); });
    return out;
}

}  // namespace rxva
