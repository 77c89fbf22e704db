#include "rxva/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace rxva::oracle {

namespace {

double neg(double v) { return std::min(v, 0.0); }
double pos(double v) { return std::max(v, 0.0); }

double objective(Row row, const ScalarTerms& t, double a, double w) {
    switch (row) {
        case Row::row1: return w * t.y_norm - a * w * w;
        case Row::row2: return w <= t.x ? w * t.y_norm - a * w * w : -INFINITY;
        case Row::row3: return pos(w + t.x) - a * w * w;
        case Row::row4:
        case Row::row5: return neg(w + t.x) - a * w * w;
    }
    return -INFINITY;
}

}  // namespace

double scalar_subproblem(Row row, const ScalarTerms& t, double a) {
    if (!(a > 0)) throw ConfigError("alpha must be positive");
    switch (row) {
        case Row::row1: return t.y_norm * t.y_norm / (4 * a);
        case Row::row2: {
            double w = std::min(t.x, t.y_norm / (2 * a));
            return w * t.y_norm - a * w * w;
        }
        case Row::row3: return pos(1 / (4 * a) + t.x);
        case Row::row4:
        case Row::row5: {
            bool outer = t.x < -1 / (2 * a) || t.x > 0;
            return outer ? neg(1 / (4 * a) + t.x) : -a * t.x * t.x;
        }
    }
    throw ConfigError("unknown sub-problem");
}

double scalar_subproblem_grid(Row row, const ScalarTerms& t, double a) {
    const int pts = 100000;
    double half = 10.0 / a * std::max(1.0, std::fabs(t.x));
    double lo = -half, hi = half;
    double best = -INFINITY, arg = 0.0;
    for (int level = 0; level < 3; ++level) {
        double h = (hi - lo) / (pts - 1);
        for (int k = 0; k < pts; ++k) {
            double w = lo + k * h;
            double v = objective(row, t, a, w);
            if (v > best) {
                best = v;
                arg = w;
            }
        }
        lo = arg - 2 * h;
        hi = arg + 2 * h;
    }
    // Candidate kinks the grid can straddle.
    for (double w : {0.0, -t.x, t.x}) best = std::max(best, objective(row, t, a, w));
    return best;
}

namespace {

using Dense = std::array<double, 6>;

Dense one_hot(int index) {
    Dense v{};
    if (index > 0) v[static_cast<std::size_t>(index) - 1] = 1.0;
    return v;
}

Dense block(int length) {
    Dense v{};
    for (int k = 0; k < length; ++k) v[static_cast<std::size_t>(k)] = 1.0;
    return v;
}

double sq_dist(const Dense& a, const Dense& b) {
    double d = 0;
    for (std::size_t k = 0; k < a.size(); ++k) d += (a[k] - b[k]) * (a[k] - b[k]);
    return d;
}

}  // namespace

double brute_psi_bcva(const BcvaSample& s, double a, double s3) {
    const int n = static_cast<int>(s.n());
    if (n > 6) throw ConfigError("brute force limited to n <= 6");
    Dense yc = one_hot(s.yc.index), yf = one_hot(s.yf.index);
    double best = -INFINITY;
    for (int v1 = 0; v1 <= n; ++v1) {
        for (int v2 = 0; v2 <= n; ++v2) {
            bool c_first = v1 > 0 && (v2 == 0 || v1 < v2);
            bool f_first = v2 > 0 && (v1 == 0 || v2 < v1);
            // Per-coordinate suprema: only the paying coordinate has a non-trivial sub-problem.
            double sup_u = 0.0;
            for (int k = 1; k <= n; ++k) {
                ScalarTerms t{s.x[static_cast<std::size_t>(k) - 1], 1.0};
                if (c_first && k == v1) sup_u += scalar_subproblem(Row::row3, t, a);
                else if (f_first && k == v2) sup_u += scalar_subproblem(Row::row4, t, a);
            }
            double pen = a * s3 * (sq_dist(one_hot(v1), yc) + sq_dist(one_hot(v2), yf));
            best = std::max(best, sup_u - pen);
        }
    }
    return best;
}

double brute_psi_fva(const FvaSample& s, double a, double s3) {
    const int n = static_cast<int>(s.n());
    if (n > 6) throw ConfigError("brute force limited to n <= 6");
    Dense y = block(s.y.length);
    double best = -INFINITY;
    for (int l = 0; l <= n; ++l) {
        Dense v = block(l);
        double val = 0.0;
        for (std::size_t k = 0; k < s.n(); ++k) {
            // sup_u u v_k - a (u - z_k)^2 = z_k v_k + row1 with |y| = v_k.
            val += s.z[k] * v[k] + scalar_subproblem(Row::row1, {0.0, v[k]}, a);
        }
        best = std::max(best, val - a * s3 * sq_dist(v, y));
    }
    return best;
}

GridMin grid_dual_scan(const std::function<double(double)>& F) {
    const int pts = 100000;
    const double l0 = std::log(1e-8), l1 = std::log(1e8);
    std::vector<double> alphas(pts);
    for (int k = 0; k < pts; ++k) alphas[static_cast<std::size_t>(k)] = std::exp(l0 + (l1 - l0) * k / (pts - 1));
    GridMin best{alphas[0], INFINITY};
    int kbest = 0;
    for (int k = 0; k < pts; ++k) {
        double v = F(alphas[static_cast<std::size_t>(k)]);
        if (v < best.value) {
            best = {alphas[static_cast<std::size_t>(k)], v};
            kbest = k;
        }
    }
    double lo = alphas[static_cast<std::size_t>(std::max(kbest - 1, 0))];
    double hi = alphas[static_cast<std::size_t>(std::min(kbest + 1, pts - 1))];
    for (int k = 0; k < pts; ++k) {
        double a = lo + (hi - lo) * k / (pts - 1);
        double v = F(a);
        if (v < best.value) best = {a, v};
    }
    return best;
}

GridMin grid_dual_scan(const BcvaDistribution& d, double delta, double s3) {
    return grid_dual_scan([&](double a) {
        double s = 0.0;
        for (const auto& x : d) s += brute_psi_bcva(x, a, s3);
        return a * delta + s / static_cast<double>(d.size());
    });
}

GridMin grid_dual_scan(const FvaDistribution& d, double delta, double s3) {
    return grid_dual_scan([&](double a) {
        double s = 0.0;
        for (const auto& x : d) s += brute_psi_fva(x, a, s3);
        return a * delta + s / static_cast<double>(d.size());
    });
}

double brute_matching(const std::vector<double>& cost, std::size_t m) {
    if (m > 8) throw ConfigError("permutation oracle limited to m <= 8");
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    double best = INFINITY;
    do {
        double c = 0.0;
        for (std::size_t i = 0; i < m; ++i) c += cost[i * m + perm[i]];
        best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best / static_cast<double>(m);
}

}  // namespace rxva::oracle
