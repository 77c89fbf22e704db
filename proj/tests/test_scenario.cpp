#include <doctest.h>

#include <cmath>

#include "rxva/rng.hpp"
#include "rxva/scenario.hpp"

using namespace rxva;

namespace {

DateGrid quarterly(int steps) { return DateGrid::monthly(parse_date("2020-04-20"), 3, steps); }

double par_coupon(const DiscountCurve& c, const DateGrid& g, std::size_t last) {
    double annuity = 0.0;
    for (std::size_t k = 1; k <= last; ++k) annuity += (g.t(k) - g.t(k - 1)) * c.df(g.t(k));
    return (1.0 - c.df(g.t(last))) / annuity;
}

ExposureCube cube_of(std::size_t paths, std::size_t dates, std::vector<double> v) {
    return ExposureCube{paths, dates, std::move(v)};
}

}  // namespace

TEST_SUITE("scenario") {
    TEST_CASE("par swap is worth zero at the valuation date") {
        auto c = bootstrap_discount_curve({{1, 0.00515}, {5, 0.0047}, {10, 0.00691}});
        auto g = quarterly(40);
        HullWhite m({0.03, {5.0}, {0.007}}, c);
        auto paths = simulate_short_rates(m, g, 50, 1);
        Portfolio book{{1e6, g.t(20), Direction::receive_fixed, par_coupon(c, g, 20), 4, 0.0},
                       {2e6, g.t(40), Direction::pay_fixed, par_coupon(c, g, 40), 4, 0.0}};
        auto cube = price_portfolio(paths, m, book, g);
        for (std::size_t i = 0; i < cube.n_paths; ++i) CHECK(std::fabs(cube.at(i, 0)) < 1e-8 * 3e6);
    }

    TEST_CASE("zero volatility makes every path the same") {
        auto c = DiscountCurve::flat(0.01);
        auto g = quarterly(20);
        HullWhite m({0.03, {1.0}, {0.0}}, c);
        auto cube = price_portfolio(simulate_short_rates(m, g, 5, 3), m,
                                    {{1.0, 5.0, Direction::receive_fixed, 0.02, 4, 0.0}}, g);
        for (std::size_t i = 1; i < cube.n_paths; ++i)
            for (std::size_t k = 0; k < cube.n_dates; ++k) CHECK(cube.at(i, k) == cube.at(0, k));
    }

    TEST_CASE("two-period receive-fixed swap matches hand discounting") {
        auto c = DiscountCurve::flat(0.03);
        DateGrid g({0.0, 0.5, 1.0});
        HullWhite m({0.03, {1.0}, {0.0}}, c);
        auto cube = price_portfolio(simulate_short_rates(m, g, 1, 1), m,
                                    {{100.0, 1.0, Direction::receive_fixed, 0.02, 2, 0.0}}, g);
        double p05 = std::exp(-0.015), p1 = std::exp(-0.03), fwd = p1 / p05;
        CHECK(cube.at(0, 0) == doctest::Approx(100 * (0.02 * 0.5 * (p05 + p1) - (1 - p1))).epsilon(1e-12));
        CHECK(cube.at(0, 1) == doctest::Approx(100 * p05 * (0.02 * 0.5 * fwd - (1 - fwd))).epsilon(1e-12));
        CHECK(cube.at(0, 2) == 0.0);
    }

    TEST_CASE("serial and parallel pricing agree bitwise") {
        auto c = DiscountCurve::flat(0.01);
        auto g = quarterly(40);
        HullWhite m({0.03, {10.0}, {0.008}}, c);
        auto paths = simulate_short_rates(m, g, 200, 9);
        Portfolio book{{1.0, 10.0, Direction::pay_fixed, 0.012, 4, 0.0}, {1.0, 7.0, Direction::receive_fixed, 0.01, 2, 1.0}};
        CHECK(price_portfolio(paths, m, book, g, Exec::serial).values ==
              price_portfolio(paths, m, book, g, Exec::parallel).values);
    }

    TEST_CASE("default sampling extremes") {
        auto g = quarterly(8);
        for (int k : sample_default_times(HazardCurve::flat(0.0), g, 100, 1, Stream::cpty_default)) CHECK(k == 0);
        for (int k : sample_default_times(HazardCurve::flat(1e6), g, 100, 1, Stream::cpty_default)) CHECK(k == 1);
    }

    TEST_CASE("default frequency by the horizon matches the survival curve within 3 SE") {
        auto g = quarterly(20);
        auto h = HazardCurve::flat(0.05);
        const std::size_t N = 20000;
        auto idx = sample_default_times(h, g, N, 42, Stream::cpty_default);
        double hits = 0;
        for (int k : idx) hits += k != 0;
        double p = 1 - h.survival(g.horizon());
        CHECK(std::fabs(hits / N - p) < 3 * std::sqrt(p * (1 - p) / N));
    }

    TEST_CASE("tie redraws keep the counterparty marginal and condition the firm away from it") {
        auto g = quarterly(4);
        auto h = HazardCurve::flat(0.4);
        const std::size_t N = 20000;
        auto d = sample_default_pair(h, h, g, N, 17);
        CHECK(d.ties_left == 0);
        CHECK(d.ties_resampled > 0);
        double pc = 0, pf = 0;
        for (std::size_t i = 0; i < N; ++i) {
            if (d.cpty[i] != 0) CHECK(d.cpty[i] != d.firm[i]);
            pc += d.cpty[i] != 0;
            pf += d.firm[i] != 0;
        }
        // Bucket probabilities, then the firm's law given it must avoid the counterparty's date.
        std::vector<double> p(g.n() + 1);
        p[0] = h.survival(g.horizon());
        for (std::size_t k = 1; k <= g.n(); ++k) p[k] = h.survival(g.t(k - 1)) - h.survival(g.t(k));
        double firm = p[0] * (1 - p[0]);
        for (std::size_t c = 1; c <= g.n(); ++c) firm += p[c] * (1 - p[0] - p[c]) / (1 - p[c]);
        double q = 1 - p[0];
        CHECK(std::fabs(pc / N - q) < 3 * std::sqrt(q * (1 - q) / N));
        CHECK(std::fabs(pf / N - firm) < 3 * std::sqrt(firm * (1 - firm) / N));
    }

    TEST_CASE("BCVA samples apply the first-to-default filter") {
        // 3 paths, dates t_0..t_5
        std::vector<double> v(3 * 6);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = (i % 2 ? -1.0 : 1.0) * double(i);
        auto cube = cube_of(3, 6, v);
        auto d = build_bcva_samples(cube, {0, 2, 4}, {0, 5, 1}, {0.4, 0.4});
        CHECK(d[0].yc.index == 0);
        CHECK(d[0].yf.index == 0);
        CHECK(d[1].yc.index == 2);
        CHECK(d[1].yf.index == 0);
        CHECK(d[2].yc.index == 0);
        CHECK(d[2].yf.index == 1);
        CHECK(d[1].x[0] == doctest::Approx(0.6 * cube.at(1, 1)));

        auto raw = build_bcva_samples(cube, {0, 2, 4}, {0, 5, 1}, {0.0, 0.0});
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t k = 1; k < 6; ++k) CHECK(raw[i].x[k - 1] == cube.at(i, k));
    }

    TEST_CASE("recovery of one is rejected") {
        RecoveryConfig r{1.0, 0.4};
        CHECK_THROWS_AS(r.validate(), ConfigError);
    }

    TEST_CASE("FVA survival block stops before the first default") {
        auto cube = cube_of(3, 6, std::vector<double>(18, 1.0));
        auto g = quarterly(5);
        auto f = simulate_funding(FundingCurve::flat(0.01), FundingCurve::flat(0.01), g, 3, 1);
        auto d = build_fva_samples(cube, {0, 3, 0}, {0, 4, 2}, f);
        CHECK(d[0].y.length == 5);
        CHECK(d[1].y.length == 2);
        CHECK(d[2].y.length == 1);
        CHECK(d[0].z[0] == doctest::Approx(0.01 * (g.t(1) - g.t(0))).epsilon(1e-12));
    }

    TEST_CASE("zero funding spreads give zero funding exposure") {
        auto cube = cube_of(2, 4, {0, 3, -2, 1, 0, -1, 4, 2});
        auto g = quarterly(3);
        auto f = simulate_funding(FundingCurve::flat(0.0), FundingCurve::flat(0.0), g, 2, 1);
        auto d = build_fva_samples(cube, {0, 0}, {0, 0}, f);
        for (const auto& s : d)
            for (double z : s.z) CHECK(z == 0.0);
        CHECK(baseline_fva(d) == 0.0);
    }

    TEST_CASE("stochastic funding rates are unbiased around the forward") {
        auto g = quarterly(20);
        FundingCurve fc({1, 5}, {0.008, 0.01}, 0.85, 0.31);
        const std::size_t N = 20000;
        auto f = simulate_funding(fc, fc, g, N, 4);
        for (std::size_t k : {1u, 10u, 20u}) {
            double s = 0, s2 = 0;
            for (std::size_t i = 0; i < N; ++i) {
                double v = f.cost[i * f.n + k - 1];
                s += v;
                s2 += v * v;
                CHECK(v == f.benefit[i * f.n + k - 1]);
            }
            double mean = s / N, se = std::sqrt(std::max(s2 / N - mean * mean, 0.0) / N);
            double expect = fc.forward(g.t(k - 1), g.t(k)) * (g.t(k) - g.t(k - 1));
            CHECK(std::fabs(mean - expect) <= 3 * se + 1e-12 * expect);  // the first period is fixed today
        }
        CHECK(simulate_funding(fc, fc, g, 50, 4, Exec::serial).cost == simulate_funding(fc, fc, g, 50, 4).cost);
    }
}
