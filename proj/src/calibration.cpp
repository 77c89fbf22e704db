#include "rxva/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace rxva {

namespace {

double spread(const std::vector<double>& v, S3Mode mode) {
    if (v.empty()) return 0.0;
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (mode == S3Mode::pairwise_max) return *hi - *lo;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double dev = 0.0;
    for (double x : v) dev = std::max(dev, std::fabs(x - mean));
    return dev;
}

template <class D, class Get>
void mean_profiles(const D& d, Get get, std::vector<double>& pos, std::vector<double>& neg) {
    if (d.size() == 0) throw DataError("S3 calibration needs a non-empty distribution");
    std::size_t n = d.n();
    pos.assign(n, 0.0);
    neg.assign(n, 0.0);
    std::vector<double> col(d.size());
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < d.size(); ++i) col[i] = std::max(get(d[i])[k], 0.0);
        pos[k] = mean_of(col);
        for (std::size_t i = 0; i < d.size(); ++i) col[i] = std::min(get(d[i])[k], 0.0);
        neg[k] = mean_of(col);
    }
}

}  // namespace

double s3_from_profiles(const std::vector<double>& pos, const std::vector<double>& neg, S3Mode mode) {
    double raw = 0.5 * (spread(pos, mode) + spread(neg, mode));
    double scale = 0.0;
    for (double v : pos) scale = std::max(scale, std::fabs(v));
    for (double v : neg) scale = std::max(scale, std::fabs(v));
    double floor = scale > 0 ? 1e-8 * scale : 1e-8;
    return std::max(raw, floor);
}

double calibrate_s3_bcva(const BcvaDistribution& d, S3Mode mode) {
    std::vector<double> pos, neg;
    mean_profiles(d, [](const BcvaSample& s) -> const std::vector<double>& { return s.x; }, pos, neg);
    return s3_from_profiles(pos, neg, mode);
}

double calibrate_s3_fva(const FvaDistribution& d, S3Mode mode) {
    std::vector<double> pos, neg;
    mean_profiles(d, [](const FvaSample& s) -> const std::vector<double>& { return s.z; }, pos, neg);
    return s3_from_profiles(pos, neg, mode);
}

Matching min_cost_matching(const std::vector<double>& cost, std::size_t m) {
    if (m == 0) throw DataError("matching needs at least one sample per side");
    if (cost.size() != m * m) throw DataError("matching: cost matrix is not m x m");
    // Shortest augmenting path with potentials (Jonker-Volgenant style Hungarian), 1-based internals.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(m + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
    std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
    std::vector<char> used(m + 1);
    auto a = [&](std::size_t i, std::size_t j) { return cost[(i - 1) * m + (j - 1)]; };
    for (std::size_t i = 1; i <= m; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            std::size_t i0 = p[j0], j1 = 0;
            double delta = inf;
            for (std::size_t j = 1; j <= m; ++j) {
                if (used[j]) continue;
                double cur = a(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    Matching out;
    out.assignment.assign(m, 0);
    for (std::size_t j = 1; j <= m; ++j) out.assignment[p[j] - 1] = j - 1;
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += cost[i * m + out.assignment[i]];
    out.cost = total / static_cast<double>(m);
    return out;
}

namespace {

template <class D, class C>
std::vector<double> build_costs(const D& a, const D& b, C c, Exec exec) {
    if (a.size() != b.size())
        throw DataError(fmt::format("matching needs equal-size sets, got {} and {}", a.size(), b.size()));
    if (a.n() != b.n()) throw DataError("matching: sample sets live on different grids");
    std::size_t m = a.size();
    std::vector<double> out(m * m);
    for_each_index(m, exec, [&](std::size_t i) {
        for (std::size_t j = 0; j < m; ++j) out[i * m + j] = c(a[i], b[j]);
    });
    return out;
}

}  // namespace

std::vector<double> cost_matrix(const BcvaDistribution& a, const BcvaDistribution& b, double s3, Exec exec) {
    return build_costs(a, b, [s3](const BcvaSample& p, const BcvaSample& q) { return cost_bcva(p, q, s3); }, exec);
}

std::vector<double> cost_matrix(const FvaDistribution& a, const FvaDistribution& b, double s3, Exec exec) {
    return build_costs(a, b, [s3](const FvaSample& p, const FvaSample& q) { return cost_fva(p, q, s3); }, exec);
}

Matching min_cost_matching(const BcvaDistribution& a, const BcvaDistribution& b, double s3, Exec exec) {
    return min_cost_matching(cost_matrix(a, b, s3, exec), a.size());
}

Matching min_cost_matching(const FvaDistribution& a, const FvaDistribution& b, double s3, Exec exec) {
    return min_cost_matching(cost_matrix(a, b, s3, exec), a.size());
}

std::vector<double> RadiusBounds::grid(const std::vector<double>& percents) const {
    std::vector<double> out;
    for (double p : percents) out.push_back(p == 50.0 ? delta_l : p == 100.0 ? delta_u : delta_u * p / 100.0);
    return out;
}

RadiusBounds radius_bounds_from_cost(double c_star) {
    if (!(c_star >= 0) || !std::isfinite(c_star)) throw NumericalError("matching cost must be finite and non-negative");
    return {c_star / 2, c_star, c_star};
}

RadiusBounds wasserstein_radius_bounds(const BcvaDistribution& a, const BcvaDistribution& b, double s3, Exec exec) {
    return radius_bounds_from_cost(min_cost_matching(a, b, s3, exec).cost);
}

RadiusBounds wasserstein_radius_bounds(const FvaDistribution& a, const FvaDistribution& b, double s3, Exec exec) {
    return radius_bounds_from_cost(min_cost_matching(a, b, s3, exec).cost);
}

}  // namespace rxva
