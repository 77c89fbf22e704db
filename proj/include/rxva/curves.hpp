#pragma once

#include <vector>

namespace rxva {

struct TenorValue {
    double tenor;  // years
    double value;  // decimal
};

// Continuously compounded zero curve, log-linear in discount factors.
// Before the first pillar ln DF is linear from the origin; beyond the last the zero rate is flat.
class DiscountCurve {
public:
    DiscountCurve(std::vector<double> pillars, std::vector<double> zero_rates);

    static DiscountCurve flat(double rate);

    double df(double t) const;
    double zero_rate(double t) const;
    // Instantaneous forward, right derivative of -ln DF.
    double forward(double t) const;

    const std::vector<double>& pillars() const { return pillars_; }
    const std::vector<double>& zero_rates() const { return zeros_; }

private:
    std::vector<double> pillars_;
    std::vector<double> zeros_;
};

struct SwapConventions {
    int fixed_per_year = 1;
};

// NPV per unit notional of a spot-starting payer-of-float / receiver-of-fixed par swap.
double par_swap_npv(const DiscountCurve& curve, double tenor, double rate, const SwapConventions& conv = {});

DiscountCurve bootstrap_discount_curve(const std::vector<TenorValue>& swap_rates, const SwapConventions& conv = {});

// Piecewise-constant hazard rate, lambda[k] on (ends[k-1], ends[k]]; the last rate continues past the last end.
class HazardCurve {
public:
    HazardCurve(std::vector<double> ends, std::vector<double> lambdas);

    static HazardCurve flat(double lambda);

    double survival(double t) const;
    double hazard(double t) const;

    const std::vector<double>& ends() const { return ends_; }
    const std::vector<double>& lambdas() const { return lambdas_; }

private:
    std::vector<double> ends_;
    std::vector<double> lambdas_;
};

struct CdsConventions {
    int premium_per_year = 4;
};

// Protection minus premium leg per unit notional for a spot CDS paying spread s.
double cds_npv(const HazardCurve& h, const DiscountCurve& curve, double tenor, double spread, double recovery,
               const CdsConventions& conv = {});

HazardCurve bootstrap_hazard_curve(const std::vector<TenorValue>& cds_spreads, double recovery,
                                   const DiscountCurve& curve, const CdsConventions& conv = {});

// Term funding spreads turned into period forwards by linear interpolation of s(T) * T,
// with a lognormal volatility sigma(t) = sigma0 * exp(-kappa t).
class FundingCurve {
public:
    FundingCurve(std::vector<double> pillars, std::vector<double> term_spreads, double sigma0 = 0.0,
                 double sigma10 = 0.0);

    static FundingCurve flat(double spread);

    // Average forward spread on [t0, t1] (decimal per annum).
    double forward(double t0, double t1) const;
    double vol(double t) const;
    double sigma0() const { return sigma0_; }
    double kappa() const { return kappa_; }
    // Integral of vol^2 over [t0, t1].
    double variance(double t0, double t1) const;

    const std::vector<double>& pillars() const { return pillars_; }
    const std::vector<double>& term_spreads() const { return spreads_; }

private:
    double cumulative(double t) const;

    std::vector<double> pillars_;
    std::vector<double> spreads_;
    double sigma0_;
    double kappa_;
};

}  // namespace rxva
