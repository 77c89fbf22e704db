#pragma once

// Hand-rolled random instance generators shared by the property and acceptance tests.

#include <cmath>
#include <random>
#include <vector>

#include "rxva/empirical.hpp"

namespace rxva::testgen {

using Rng = std::mt19937_64;

inline double uniform(Rng& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

inline int integer(Rng& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

inline double log_uniform(Rng& g, double lo, double hi) { return std::exp(uniform(g, std::log(lo), std::log(hi))); }

// Mixed-sign exposures on a random scale, occasionally exactly zero.
inline std::vector<double> exposures(Rng& g, std::size_t n) {
    double scale = log_uniform(g, 0.05, 20.0);
    std::vector<double> x(n);
    for (auto& v : x) v = integer(g, 0, 9) == 0 ? 0.0 : scale * std::normal_distribution<double>()(g);
    return x;
}

// Indicator pairs cover no default, one default, and (as perturbed points can) two distinct dates.
inline BcvaSample bcva_sample(Rng& g, std::size_t n) {
    BcvaSample s;
    s.x = exposures(g, n);
    int N = static_cast<int>(n);
    s.yc.index = integer(g, 0, 2) == 0 ? 0 : integer(g, 1, N);
    s.yf.index = integer(g, 0, 2) == 0 ? 0 : integer(g, 1, N);
    if (s.yc.index == s.yf.index) s.yf.index = 0;
    return s;
}

// First-to-default samples as the scenario engine produces them: at most one nonzero index.
inline BcvaSample bcva_sample_exclusive(Rng& g, std::size_t n) {
    auto s = bcva_sample(g, n);
    if (s.yc.index != 0 && s.yf.index != 0) (s.yc.index < s.yf.index ? s.yf.index : s.yc.index) = 0;
    return s;
}

inline FvaSample fva_sample(Rng& g, std::size_t n) {
    FvaSample s;
    s.z = exposures(g, n);
    s.y.length = integer(g, 0, static_cast<int>(n));
    return s;
}

inline BcvaDistribution bcva_distribution(Rng& g, std::size_t N, std::size_t n) {
    std::vector<BcvaSample> v;
    for (std::size_t i = 0; i < N; ++i) v.push_back(bcva_sample(g, n));
    return BcvaDistribution(std::move(v));
}

inline FvaDistribution fva_distribution(Rng& g, std::size_t N, std::size_t n) {
    std::vector<FvaSample> v;
    for (std::size_t i = 0; i < N; ++i) v.push_back(fva_sample(g, n));
    return FvaDistribution(std::move(v));
}

}  // namespace rxva::testgen
