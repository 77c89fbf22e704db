#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "rxva/empirical.hpp"
#include "rxva/metrics.hpp"

using namespace rxva;
namespace tg = rxva::testgen;

namespace {

BcvaSample bs(std::vector<double> x, int c, int f) { return {std::move(x), {c}, {f}}; }
FvaSample fs(std::vector<double> z, int l) { return {std::move(z), {l}}; }

}  // namespace

TEST_SUITE("empirical") {
    TEST_CASE("indicator vectors materialize and differ as expected") {
        CHECK(DefaultIndicatorVec{2}.materialize(3) == std::vector<double>{0, 1, 0});
        CHECK(DefaultIndicatorVec{0}.materialize(3) == std::vector<double>{0, 0, 0});
        CHECK(SurvivalIndicatorVec{2}.materialize(3) == std::vector<double>{1, 1, 0});
        auto p = PerturbationVec::between(DefaultIndicatorVec{3}, DefaultIndicatorVec{1}, 3);
        CHECK(p.entries == std::vector<double>{-1, 0, 1});
        CHECK(p.squared_norm() == 2.0);
        CHECK(PerturbationVec::between(SurvivalIndicatorVec{1}, SurvivalIndicatorVec{3}, 3).squared_norm() == 2.0);
    }

    TEST_CASE("index-space distances equal the dense squared norms") {
        tg::Rng g(11);
        for (int k = 0; k < 200; ++k) {
            std::size_t n = 5;
            DefaultIndicatorVec a{tg::integer(g, 0, 5)}, b{tg::integer(g, 0, 5)};
            CHECK(indicator_distance(a, b) == PerturbationVec::between(a, b, n).squared_norm());
            SurvivalIndicatorVec u{tg::integer(g, 0, 5)}, v{tg::integer(g, 0, 5)};
            CHECK(indicator_distance(u, v) == PerturbationVec::between(u, v, n).squared_norm());
        }
    }

    TEST_CASE("BCVA cost examples") {
        auto a = bs({1.0, 2.0}, 1, 0);
        CHECK(cost_bcva(a, a, 3.0) == 0.0);
        CHECK(cost_bcva(a, bs({1.0, 2.0}, 2, 0), 3.0) == 6.0);
        CHECK(cost_bcva(a, bs({2.0, 2.0}, 1, 0), 3.0) == 1.0);
    }

    TEST_CASE("FVA cost examples") {
        auto a = fs({1.0, 2.0, 3.0}, 3);
        CHECK(cost_fva(a, a, 0.5) == 0.0);
        CHECK(cost_fva(a, fs({1.0, 2.0, 3.0}, 1), 0.5) == 1.0);
        CHECK(cost_fva(fs({0.0, 0.0}, 1), fs({0.0, 2.0}, 1), 0.5) == 4.0);
    }

    TEST_CASE("payoffs and baselines") {
        BcvaDistribution one({bs({1.0, -0.5}, 1, 0)});
        CHECK(baseline_bcva(one) == 1.0);
        CHECK(baseline_bcva(BcvaDistribution({bs({1.0, -0.5}, 0, 0)})) == 0.0);
        BcvaDistribution two({bs({1.0, -0.5}, 1, 0), bs({1.0, -0.5}, 0, 0)});
        CHECK(baseline_bcva(two) == 0.5);

        BcvaDistribution pos({bs({1.0, 2.0}, 0, 1), bs({3.0, 2.0}, 2, 0)});
        CHECK(baseline_unilateral_dva(pos) == 0.0);
        BcvaDistribution neg({bs({-2.0}, 0, 1), bs({1.0}, 0, 0)});
        CHECK(baseline_unilateral_dva(neg) == 1.0);  // +2 / N
        CHECK(baseline_bcva(neg) == -1.0);

        CHECK(baseline_fva(FvaDistribution({fs({0.1, -0.2}, 2)})) == doctest::Approx(-0.1));
        CHECK(baseline_fva(FvaDistribution({fs({0.1, -0.2}, 0)})) == 0.0);
        FvaDistribution mixed({fs({0.1, -0.2}, 2)});
        CHECK(baseline_fca(mixed) == doctest::Approx(0.1));
        CHECK(baseline_fba(mixed) == doctest::Approx(-0.2));
    }

    TEST_CASE("BCVA legs split the bilateral value") {
        tg::Rng g(12);
        for (int k = 0; k < 50; ++k) {
            std::vector<BcvaSample> v;
            for (int i = 0; i < 20; ++i) v.push_back(tg::bcva_sample_exclusive(g, 6));
            BcvaDistribution d(std::move(v));
            CHECK(baseline_bcva(d) ==
                  doctest::Approx(baseline_unilateral_cva(d) - baseline_unilateral_dva(d)).epsilon(1e-12));
            CHECK(baseline_unilateral_cva(d) >= 0.0);
            CHECK(baseline_unilateral_dva(d) >= 0.0);
        }
    }

    TEST_CASE("malformed samples are rejected") {
        CHECK_THROWS_AS(BcvaDistribution({bs({1.0}, 0, 0), bs({1.0, 2.0}, 0, 0)}), DataError);
        CHECK_THROWS_AS(BcvaDistribution(std::vector<BcvaSample>{}), DataError);
        CHECK_THROWS_AS(validate(bs({1.0}, 2, 0)), DataError);
        CHECK_THROWS_AS(validate(bs({1.0, 2.0}, 1, 1)), DataError);
        CHECK_THROWS_AS(validate(fs({1.0}, 2)), DataError);
    }
}

TEST_SUITE("metrics") {
    TEST_CASE("constant exposure") {
        std::vector<double> t{0, 1, 2, 3};
        auto p = exposure_profiles(std::vector<double>(5 * 4, 2.5), 5, t, 0.95);
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(p.ee[k] == 2.5);
            CHECK(p.pfe[k] == 2.5);
            CHECK(p.eff_ee[k] == 2.5);
        }
        CHECK(p.epe == doctest::Approx(2.5));
        CHECK(p.eff_epe == doctest::Approx(2.5));
        CHECK(p.max_pfe == 2.5);
        CHECK(p.sum_pfe == 10.0);
    }

    TEST_CASE("PFE uses the lower quantile") {
        CHECK(lower_quantile({0, 1, 2, 3}, 0.95) == 3.0);
        CHECK(lower_quantile({3, 0, 2, 1}, 0.5) == 1.0);
        CHECK(lower_quantile({3, 0, 2, 1}, 0.25) == 0.0);
        CHECK(lower_quantile({3, 0, 2, 1}, 0.26) == 1.0);
    }

    TEST_CASE("decreasing EE keeps effective EE at the initial maximum") {
        std::vector<double> t{0, 1, 2};
        std::vector<double> v{3, 2, 1, 3, 2, 1};
        auto p = exposure_profiles(v, 2, t, 0.95);
        CHECK(p.eff_ee == std::vector<double>{3, 3, 3});
        CHECK(p.epe == doctest::Approx(2.0));
        CHECK(p.eff_epe == doctest::Approx(3.0));
    }

    TEST_CASE("profile invariants on random cubes") {
        tg::Rng g(13);
        for (int r = 0; r < 20; ++r) {
            std::size_t N = 50, nd = 12;
            std::vector<double> v(N * nd), t(nd);
            for (std::size_t k = 0; k < nd; ++k) t[k] = 0.25 * k;
            for (auto& x : v) x = std::max(0.0, tg::uniform(g, -1, 3));
            auto p = exposure_profiles(v, N, t, 0.95);
            auto lo = exposure_profiles(v, N, t, 0.5);
            for (std::size_t k = 0; k < nd; ++k) {
                CHECK(p.eff_ee[k] >= p.ee[k]);
                if (k) CHECK(p.eff_ee[k] >= p.eff_ee[k - 1]);
                CHECK(p.pfe[k] >= lo.pfe[k]);
            }
            CHECK(p.eff_epe >= p.epe);
            CHECK(p.max_pfe == *std::max_element(p.pfe.begin(), p.pfe.end()));
            auto s = exposure_profiles(v, N, t, 0.95, Exec::serial);
            CHECK(s.ee == p.ee);
            CHECK(s.pfe == p.pfe);
        }
    }

    TEST_CASE("bad inputs") {
        CHECK_THROWS_AS(exposure_profiles({}, 0, {}, 0.95), DataError);
        CHECK_THROWS_AS(exposure_profiles({1, 2}, 1, {0, 1}, 1.0), ConfigError);
    }
}
