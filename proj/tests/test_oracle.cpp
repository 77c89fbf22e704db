#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "rxva/oracle.hpp"
#include "rxva/robust_bcva.hpp"
#include "rxva/robust_fva.hpp"

using namespace rxva;
namespace tg = rxva::testgen;

TEST_SUITE("oracle") {
    TEST_CASE("scalar sub-problem closed forms") {
        CHECK(oracle::scalar_subproblem(oracle::Row::row1, {0.0, 1.0}, 0.5) == 0.5);
        CHECK(oracle::scalar_subproblem(oracle::Row::row3, {-1.0, 1.0}, 1.0) == 0.0);
        CHECK(oracle::scalar_subproblem(oracle::Row::row3, {0.5, 1.0}, 1.0) == 0.75);
        CHECK_THROWS_AS(oracle::scalar_subproblem(oracle::Row::row1, {0.0, 1.0}, 0.0), ConfigError);
    }

    TEST_CASE("every row agrees with dense grid maximization") {
        tg::Rng g(51);
        const oracle::Row rows[] = {oracle::Row::row1, oracle::Row::row2, oracle::Row::row3, oracle::Row::row4,
                                    oracle::Row::row5};
        for (int k = 0; k < 40; ++k) {
            oracle::ScalarTerms t{tg::uniform(g, -3, 3), tg::uniform(g, 0.2, 2)};
            double a = tg::log_uniform(g, 0.05, 20);
            for (auto r : rows) {
                double exact = oracle::scalar_subproblem(r, t, a), grid = oracle::scalar_subproblem_grid(r, t, a);
                CAPTURE(static_cast<int>(r));
                CHECK(std::fabs(exact - grid) <= 1e-6 * (1 + std::fabs(exact)));
            }
        }
    }

    TEST_CASE("enumeration self-checks") {
        BcvaSample s{{0.5, 0.0}, {1}, {0}};
        CHECK(oracle::brute_psi_bcva(s, 1.0, 10.0) == doctest::Approx(0.75).epsilon(1e-14));
        CHECK(std::fabs(oracle::brute_psi_bcva(s, 1e7, 1.0) - bcva_payoff(s)) < 1e-6);
        FvaSample z{{0.0, 0.0, 0.0}, {2}};
        CHECK(oracle::brute_psi_fva(z, 0.5, 100.0) == doctest::Approx(2 / (4 * 0.5)).epsilon(1e-14));
        FvaSample zero{{0.0, 0.0}, {0}};
        CHECK(oracle::brute_psi_fva(zero, 1.0, 100.0) == 0.0);
        CHECK_THROWS_AS(oracle::brute_psi_fva(FvaSample{std::vector<double>(7, 0.0), {0}}, 1.0, 1.0), ConfigError);

        tg::Rng g(52);
        for (int k = 0; k < 100; ++k) {
            auto b = tg::bcva_sample(g, 3);
            auto f = tg::fva_sample(g, 3);
            double a = tg::log_uniform(g, 1e-2, 1e2), s3 = tg::log_uniform(g, 1e-2, 1e2);
            CHECK(std::fabs(oracle::brute_psi_bcva(b, a, s3) - psi_alpha_bcva(b, a, s3).value) <= 1e-9 * (1 + std::fabs(psi_alpha_bcva(b, a, s3).value)));
            CHECK(std::fabs(oracle::brute_psi_fva(f, a, s3) - psi_alpha_fva(f, a, s3).value) <= 1e-9 * (1 + std::fabs(psi_alpha_fva(f, a, s3).value)));
        }
    }

    TEST_CASE("grid scan on a convex function") {
        auto r = oracle::grid_dual_scan([](double a) { return (std::log(a) - 1) * (std::log(a) - 1); });
        CHECK(r.alpha == doctest::Approx(std::exp(1.0)).epsilon(1e-6));
        CHECK(r.value < 1e-10);
    }

    TEST_CASE("delta zero trace decreases towards the baseline") {
        tg::Rng g(53);
        auto d = tg::bcva_distribution(g, 4, 3);
        double prev = INFINITY;
        for (double a = 1e-3; a < 1e6; a *= 10) {
            double v = dual_objective_bcva(d, a, 0.0, 1.0);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
        CHECK(oracle::grid_dual_scan(d, 0.0, 1.0).value == doctest::Approx(baseline_bcva(d)).epsilon(1e-6));
    }

    TEST_CASE("permutation matching") {
        std::vector<double> c{4, 1, 3, 2, 0, 5, 3, 2, 2};
        CHECK(oracle::brute_matching(c, 3) == doctest::Approx(5.0 / 3));
        CHECK(oracle::brute_matching({7.0}, 1) == 7.0);
    }
}
