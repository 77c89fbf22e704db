#include "rxva/hull_white.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "rxva/rng.hpp"

namespace rxva {

void HwParams::validate() const {
    if (!(a > 0) || !std::isfinite(a)) throw ConfigError("mean reversion must be positive");
    if (ends.empty() || ends.size() != sigmas.size()) throw ConfigError("volatility buckets malformed");
    for (std::size_t k = 0; k < ends.size(); ++k) {
        if (!(ends[k] > 0) || (k > 0 && !(ends[k] > ends[k - 1])))
            throw ConfigError("volatility bucket ends must be positive and ascending");
        if (!(sigmas[k] >= 0) || !std::isfinite(sigmas[k])) throw ConfigError("volatility must be non-negative");
    }
}

double HwParams::sigma(double t) const {
    auto it = std::lower_bound(ends.begin(), ends.end(), t);
    if (it == ends.end()) return sigmas.back();
    return sigmas[static_cast<std::size_t>(it - ends.begin())];
}

HullWhite::HullWhite(HwParams params, DiscountCurve curve) : p_(std::move(params)), curve_(std::move(curve)) {
    p_.validate();
}

template <class F>
double HullWhite::piecewise(double t, double T, F segment) const {
    double total = 0.0, u0 = t;
    for (std::size_t k = 0; k < p_.ends.size() && u0 < T; ++k) {
        if (p_.ends[k] <= u0) continue;
        double u1 = k + 1 == p_.ends.size() ? T : std::min(T, p_.ends[k]);
        if (p_.sigmas[k] > 0) total += p_.sigmas[k] * p_.sigmas[k] * segment(u0, u1);
        u0 = u1;
    }
    if (u0 < T && p_.sigmas.back() > 0) total += p_.sigmas.back() * p_.sigmas.back() * segment(u0, T);
    return total;
}

namespace {

// Integrals over [u0, u1] of e(u), e(u)^2 with e(u) = exp(-a (T - u)).
struct SegInt {
    double e1, e2;
};

SegInt seg(double a, double T, double u0, double u1) {
    double top = std::exp(-a * (T - u1));
    double d = u1 - u0;
    return {-top * std::expm1(-a * d) / a, -top * top * std::expm1(-2 * a * d) / (2 * a)};
}

}  // namespace

double HullWhite::B(double t, double T) const { return -std::expm1(-p_.a * (T - t)) / p_.a; }

double HullWhite::V(double t, double T) const {
    if (T <= t) return 0.0;
    double a = p_.a;
    return piecewise(t, T, [&](double u0, double u1) {
        auto s = seg(a, T, u0, u1);
        return std::max(0.0, (u1 - u0) - 2 * s.e1 + s.e2) / (a * a);
    });
}

double HullWhite::var_x(double t, double T) const {
    if (T <= t) return 0.0;
    double a = p_.a;
    return piecewise(t, T, [&](double u0, double u1) { return seg(a, T, u0, u1).e2; });
}

double HullWhite::log_A(double t, double T) const {
    return std::log(curve_.df(T) / curve_.df(t)) + 0.5 * (V(t, T) - V(0, T) + V(0, t));
}

double HullWhite::bond(double t, double T, double x) const { return std::exp(log_A(t, T) - B(t, T) * x); }

double HullWhite::shift(double t) const {
    double a = p_.a;
    double conv = t <= 0 ? 0.0 : piecewise(0, t, [&](double u0, double u1) {
        auto s = seg(a, t, u0, u1);
        return (s.e1 - s.e2) / a;
    });
    return curve_.forward(t) + conv;
}

HullWhite::StepMoments HullWhite::step(double s, double t) const {
    double a = p_.a;
    StepMoments m{};
    m.decay = std::exp(-a * (t - s));
    m.b = B(s, t);
    m.var_x = var_x(s, t);
    m.cov = piecewise(s, t, [&](double u0, double u1) {
        auto g = seg(a, t, u0, u1);
        return (g.e1 - g.e2) / a;
    });
    m.var_i = V(s, t);
    return m;
}

ShortRatePaths simulate_short_rates(const HullWhite& model, const DateGrid& grid, std::size_t n_paths,
                                    std::uint64_t seed, Exec exec) {
    if (n_paths == 0) throw ConfigError("n_paths must be at least 1");
    const auto& t = grid.times();
    std::size_t nd = t.size();

    struct Chol {
        double decay, b, l11, l21, l22;
    };
    std::vector<Chol> steps(nd);
    std::vector<double> p0(nd), v0(nd);
    for (std::size_t k = 0; k < nd; ++k) {
        p0[k] = model.curve().df(t[k]);
        v0[k] = model.V(0, t[k]);
        if (k == 0) continue;
        auto m = model.step(t[k - 1], t[k]);
        Chol c{m.decay, m.b, 0, 0, 0};
        c.l11 = std::sqrt(m.var_x);
        if (c.l11 > 0) {
            c.l21 = m.cov / c.l11;
            c.l22 = std::sqrt(std::max(0.0, m.var_i - c.l21 * c.l21));
        } else {
            c.l22 = std::sqrt(m.var_i);
        }
        steps[k] = c;
    }

    ShortRatePaths out;
    out.n_paths = n_paths;
    out.times = t;
    out.x.assign(n_paths * nd, 0.0);
    out.df.assign(n_paths * nd, 0.0);
    out.shift.resize(nd);
    for (std::size_t k = 0; k < nd; ++k) out.shift[k] = model.shift(t[k]);

    auto one_path = [&](std::size_t i) {
        auto eng = path_engine(seed, Stream::rates, i);
        std::normal_distribution<double> nd01;
        double* xs = &out.x[i * nd];
        double* ds = &out.df[i * nd];
        double x = 0.0, integral = 0.0;
        xs[0] = 0.0;
        ds[0] = 1.0;
        for (std::size_t k = 1; k < nd; ++k) {
            const auto& c = steps[k];
            double z1 = nd01(eng), z2 = nd01(eng);
            integral += x * c.b + c.l21 * z1 + c.l22 * z2;
            x = x * c.decay + c.l11 * z1;
            xs[k] = x;
            ds[k] = p0[k] * std::exp(-integral - 0.5 * v0[k]);
        }
    };

    auto n = static_cast<std::ptrdiff_t>(n_paths);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) one_path(static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) one_path(static_cast<std::size_t>(i));
    }
    return out;
}

namespace {

struct SwaptionWeights {
    double beta;
    double expiry;
};

SwaptionWeights swaption_weights(const HullWhite& model, double expiry, double tenor, int per_year) {
    if (!(expiry > 0) || !(tenor > 0) || per_year <= 0) throw DataError("bad swaption quote");
    double a = model.params().a;
    const auto& c = model.curve();
    int n = static_cast<int>(std::lround(tenor * per_year));
    if (n < 1) throw DataError("swaption tenor shorter than one fixed period");
    double step = 1.0 / per_year;
    double p0 = c.df(expiry), annuity = 0.0, weighted = 0.0;
    double pn = p0;
    for (int j = 1; j <= n; ++j) {
        double tj = expiry + j * step;
        double pj = c.df(tj);
        annuity += step * pj;
        weighted += step * pj * std::exp(-a * tj);
        pn = pj;
    }
    double tn = expiry + n * step;
    double s0 = (p0 - pn) / annuity;
    double beta = (p0 * std::exp(-a * expiry) - pn * std::exp(-a * tn) - s0 * weighted) / (a * annuity);
    return {beta, expiry};
}

// Integral of exp(2 a u) over [u0, u1].
double exp2_int(double a, double u0, double u1) {
    return std::exp(2 * a * u1) * -std::expm1(-2 * a * (u1 - u0)) / (2 * a);
}

}  // namespace

double hw_swaption_normal_vol(const HullWhite& model, double expiry, double tenor, int fixed_per_year) {
    auto w = swaption_weights(model, expiry, tenor, fixed_per_year);
    const auto& p = model.params();
    double total = 0.0, u0 = 0.0;
    for (std::size_t k = 0; k < p.ends.size() && u0 < expiry; ++k) {
        double u1 = k + 1 == p.ends.size() ? expiry : std::min(expiry, p.ends[k]);
        if (u1 > u0) total += p.sigmas[k] * p.sigmas[k] * exp2_int(p.a, u0, u1);
        u0 = std::max(u0, u1);
    }
    if (u0 < expiry) total += p.sigmas.back() * p.sigmas.back() * exp2_int(p.a, u0, expiry);
    return std::fabs(w.beta) * std::sqrt(total / expiry);
}

HwCalibration calibrate_hull_white(const std::vector<SwaptionQuote>& surface, const DiscountCurve& curve, double a,
                                   const HwCalibrationOptions& opt) {
    if (surface.empty()) throw DataError("swaption surface is empty");
    if (!(a > 0)) throw ConfigError("mean reversion must be positive");
    std::vector<double> ends;
    double vol_sum = 0.0;
    for (const auto& q : surface) {
        if (!(q.vol >= 0) || !std::isfinite(q.vol)) throw DataError("swaption vol must be finite and non-negative");
        ends.push_back(q.expiry);
        vol_sum += q.vol;
    }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    const auto K = static_cast<Eigen::Index>(ends.size());
    const auto Q = static_cast<Eigen::Index>(surface.size());

    // W(q, k): weight of sigma_k^2 in the model variance of quote q, divided by expiry.
    HullWhite probe(HwParams{a, ends, std::vector<double>(ends.size(), 0.0)}, curve);
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(Q, K);
    Eigen::VectorXd mkt(Q);
    for (Eigen::Index q = 0; q < Q; ++q) {
        const auto& s = surface[static_cast<std::size_t>(q)];
        auto w = swaption_weights(probe, s.expiry, s.tenor, opt.fixed_per_year);
        double u0 = 0.0;
        for (Eigen::Index k = 0; k < K && u0 < s.expiry; ++k) {
            double u1 = std::min(s.expiry, ends[static_cast<std::size_t>(k)]);
            W(q, k) = w.beta * w.beta * exp2_int(a, u0, u1) / s.expiry;
            u0 = u1;
        }
        mkt(q) = s.vol;
    }

    auto model_vols = [&](const Eigen::VectorXd& sig) {
        return (W * sig.cwiseProduct(sig)).cwiseSqrt().eval();
    };
    auto jacobian = [&](const Eigen::VectorXd& sig, const Eigen::VectorXd& m) {
        Eigen::MatrixXd J(Q, K);
        for (Eigen::Index q = 0; q < Q; ++q)
            for (Eigen::Index k = 0; k < K; ++k)
                J(q, k) = m(q) > 0 ? sig(k) * W(q, k) / m(q) : std::sqrt(W(q, k));
        return J;
    };

    Eigen::VectorXd sig = Eigen::VectorXd::Constant(K, vol_sum / static_cast<double>(Q));
    Eigen::VectorXd m = model_vols(sig);
    Eigen::VectorXd r = m - mkt;
    double cost = 0.5 * r.squaredNorm();
    double lambda = 1e-3;
    bool converged = cost <= 1e-30;
    int it = 0;
    for (; it < opt.max_iter && !converged; ++it) {
        Eigen::MatrixXd J = jacobian(sig, m);
        Eigen::VectorXd g = J.transpose() * r;
        if (g.lpNorm<Eigen::Infinity>() <= 1e-18) {
            converged = true;
            break;
        }
        Eigen::MatrixXd H = J.transpose() * J;
        bool accepted = false;
        while (!accepted) {
            Eigen::MatrixXd A = H;
            for (Eigen::Index k = 0; k < K; ++k) A(k, k) += lambda * std::max(H(k, k), 1e-12);
            Eigen::VectorXd step = A.ldlt().solve(-g);
            Eigen::VectorXd trial = (sig + step).cwiseAbs();
            Eigen::VectorXd tm = model_vols(trial);
            Eigen::VectorXd tr = tm - mkt;
            double tc = 0.5 * tr.squaredNorm();
            if (tc < cost) {
                double drop = cost - tc;
                bool small_step = (trial - sig).norm() <= 1e-12 * (sig.norm() + 1e-12);
                sig = trial;
                m = tm;
                r = tr;
                converged = drop <= opt.tol * cost || small_step || tc <= 1e-30;
                cost = tc;
                lambda = std::max(lambda / 3.0, 1e-12);
                accepted = true;
            } else {
                lambda *= 4.0;
                if (lambda > 1e16) {
                    converged = true;
                    break;
                }
            }
        }
    }
    double rmse = std::sqrt(r.squaredNorm() / static_cast<double>(Q));
    if (!converged)
        throw NumericalError(fmt::format("Hull-White calibration did not converge after {} iterations; best RMSE {}",
                                         opt.max_iter, rmse));
    HwCalibration out;
    out.params = HwParams{a, ends, std::vector<double>(sig.data(), sig.data() + K)};
    out.rmse = rmse;
    double mean_mkt = vol_sum / static_cast<double>(Q);
    out.rel_rmse = mean_mkt > 0 ? rmse / mean_mkt : 0.0;
    out.iterations = it;
    out.model_vols.assign(m.data(), m.data() + Q);
    return out;
}

}  // namespace rxva
