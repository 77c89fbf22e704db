#pragma once

#include <cstdint>
#include <vector>

#include "rxva/common.hpp"
#include "rxva/curves.hpp"
#include "rxva/date_grid.hpp"

namespace rxva {

// sigma[k] applies on (ends[k-1], ends[k]]; the last value continues past the last end.
struct HwParams {
    double a = 0.03;
    std::vector<double> ends{1.0};
    std::vector<double> sigmas{0.0};

    void validate() const;
    double sigma(double t) const;
};

// Hull-White one factor in the x-formulation: r(t) = x(t) + shift(t), x(0) = 0.
class HullWhite {
public:
    HullWhite(HwParams params, DiscountCurve curve);

    const HwParams& params() const { return p_; }
    const DiscountCurve& curve() const { return curve_; }

    double B(double t, double T) const;
    // Integral over [t, T] of sigma(u)^2 B(u, T)^2.
    double V(double t, double T) const;
    // ln of the deterministic factor in P(t, T | x) = exp(lnA - B x).
    double log_A(double t, double T) const;
    double bond(double t, double T, double x) const;
    double shift(double t) const;
    // Variance of x(T) started at x(t).
    double var_x(double t, double T) const;

    struct StepMoments {
        double decay;   // exp(-a dt)
        double b;       // B(s, t)
        double var_x;   // Var x(t) | x(s)
        double cov;     // Cov(x(t), I(s,t))
        double var_i;   // Var I(s,t), I = integral of x
    };
    StepMoments step(double s, double t) const;

private:
    template <class F>
    double piecewise(double t, double T, F segment) const;

    HwParams p_;
    DiscountCurve curve_;
};

struct ShortRatePaths {
    std::size_t n_paths = 0;
    std::vector<double> times;
    std::vector<double> x;      // n_paths x times.size(), path-major
    std::vector<double> df;     // pathwise discount factor D(0, t_k)
    std::vector<double> shift;  // deterministic part of the short rate per date

    std::size_t n_dates() const { return times.size(); }
    double x_at(std::size_t i, std::size_t k) const { return x[i * times.size() + k]; }
    double df_at(std::size_t i, std::size_t k) const { return df[i * times.size() + k]; }
    double short_rate(std::size_t i, std::size_t k) const { return x_at(i, k) + shift[k]; }
};

// Exact joint Gaussian transition of (x, integral of x) per grid step.
ShortRatePaths simulate_short_rates(const HullWhite& model, const DateGrid& grid, std::size_t n_paths,
                                    std::uint64_t seed, Exec exec = Exec::parallel);

struct SwaptionQuote {
    double expiry;  // years
    double tenor;   // years
    double vol;     // normal vol, decimal
};

// Model ATM normal vol of a swaption with frozen bond weights.
double hw_swaption_normal_vol(const HullWhite& model, double expiry, double tenor, int fixed_per_year = 1);

struct HwCalibrationOptions {
    int max_iter = 200;
    double tol = 1e-12;
    int fixed_per_year = 1;
};

struct HwCalibration {
    HwParams params;
    double rmse = 0.0;
    double rel_rmse = 0.0;
    int iterations = 0;
    std::vector<double> model_vols;
};

// Least-squares fit of piecewise-constant sigma on the quoted expiry buckets, mean reversion fixed.
HwCalibration calibrate_hull_white(const std::vector<SwaptionQuote>& surface, const DiscountCurve& curve, double a,
                                   const HwCalibrationOptions& opt = {});

}  // namespace rxva
