#include "chi2/buildup.hpp"
#include "chi2/errors.hpp"
#include "frozen_oracles.hpp"
#include "gen.hpp"

#include "approx.hpp"

#include <doctest.h>

#include <cmath>

using namespace chi2;

TEST_CASE("circulating power against the scipy oracle") {
    CHECK(buildup_solve(0.5, {0.02, 0.01, 3e-4}).p_circ == approx(oracle::pc_case1).epsilon(1e-10));
    CHECK(buildup_solve(5.0, {0.05, 0.002, 1e-3}).p_circ == approx(oracle::pc_case2).epsilon(1e-10));
    CHECK(buildup_solve(1.0, {0.016, 0.016, 0.0}).p_circ == approx(oracle::pc_case3).epsilon(1e-10));
}

TEST_CASE("passive cavity identities") {
    double t1 = 0.016, l = 0.016;
    auto s = buildup_solve(1.0, {t1, l, 0.0});
    double amp = std::sqrt((1 - t1) * (1 - l));
    CHECK(s.p_circ == approx(t1 / ((1 - amp) * (1 - amp))).epsilon(1e-12));
    // impedance matched: the reflected field sqrt(1-T1) E_in - sqrt(T1) E_circ (round trip) vanishes
    double reflected = std::pow(std::sqrt(1 - t1) - t1 * std::sqrt(1 - l) / (1 - amp), 2);
    CHECK(reflected < 1e-4);
    CHECK(impedance_match_T1(0.013, 0.0, 1.0) == 0.013);
}

TEST_CASE("calibration against the scipy oracle") {
    auto c = calibrate_buildup();
    CHECK(c.l_passive == approx(oracle::cal_l_passive).epsilon(1e-8));
    CHECK(c.gamma == approx(oracle::cal_gamma).epsilon(1e-8));
    CHECK(c.conversion_total == approx(0.5).epsilon(1e-12));
    BuildupParams p{0.016, c.l_passive, c.gamma};
    auto s = buildup_solve(1.8, p);
    CHECK(s.p_sh_main == approx(oracle::cal_psh_main_1p8).epsilon(1e-7));
    CHECK(s.conversion_main == approx(0.84 * s.conversion_total).epsilon(1e-6));
    CHECK(impedance_match_T1(c.l_passive, c.gamma, 1.0) == approx(0.016).epsilon(1e-6));
    CHECK(buildup_log_slope(1e-5, p) == approx(2.0).epsilon(0.005));
}

TEST_CASE("inconsistent observations") {
    BuildupObservations o;
    // lossless limit at 1.8 W with T1 matched at 1 W is 97.98 %
    o.conversion_main = 0.99;
    o.r_brewster = 0.0;
    CHECK_THROWS_AS(calibrate_buildup(o), Inconsistent);
    o.conversion_main = 0.95;
    CHECK(calibrate_buildup(o).l_passive < 1e-3);
    o.conversion_main = 0.42;
    o.r_brewster = 1.2;
    CHECK_THROWS_AS(calibrate_buildup(o), Inconsistent);
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(buildup_solve(1.0, {0.0, 0.0, 0.0}), InvalidParam);
    CHECK_THROWS_AS(buildup_solve(1.0, {0.01, -0.1, 0.0}), InvalidParam);
    CHECK_THROWS_AS(buildup_solve(-1.0, {0.01, 0.0, 0.0}), InvalidParam);
}

TEST_CASE("property: fixed-point residual below 1e-9 P_in") {
    Gen g(61);
    for (int i = 0; i < 300; ++i) {
        BuildupParams p{g.uniform(0.002, 0.2), g.uniform(0, 0.05), g.log_uniform(1e-7, 1e-2)};
        double pin = g.log_uniform(1e-6, 20);
        auto s = buildup_solve(pin, p);
        double amp = std::sqrt((1 - p.t1) * (1 - p.l_passive) * (1 - p.gamma * s.p_circ));
        double r = std::abs(s.p_circ * (1 - amp) * (1 - amp) - p.t1 * pin);
        CHECK(r <= 1e-9 * pin);
        CHECK(s.p_circ >= 0);
        CHECK(s.p_sh_internal == approx(p.gamma * s.p_circ * s.p_circ).epsilon(1e-14));
    }
}

TEST_CASE("property: monotone buildup, single conversion maximum") {
    Gen g(62);
    for (int i = 0; i < 100; ++i) {
        BuildupParams p{g.uniform(0.005, 0.05), g.uniform(0, 0.02), g.log_uniform(1e-6, 1e-3)};
        double prev_pc = -1, prev_sh = -1, prev_conv = -1;
        int turns = 0;
        bool rising = true;
        for (int k = 0; k < 30; ++k) {
            double pin = 0.01 * std::pow(1.25, k);
            auto s = buildup_solve(pin, p);
            CHECK(s.p_circ > prev_pc);
            CHECK(s.p_sh_internal > prev_sh);
            bool up = s.conversion_total >= prev_conv;
            if (up != rising) {
                ++turns;
                rising = up;
            }
            prev_pc = s.p_circ;
            prev_sh = s.p_sh_internal;
            prev_conv = s.conversion_total;
        }
        // rises, then at most one turn into decline
        CHECK(turns <= 1);
        CHECK((turns == 0 || !rising));
    }
}

TEST_CASE("property: impedance match maximizes circulating power") {
    Gen g(63);
    for (int i = 0; i < 100; ++i) {
        double l = g.uniform(0.001, 0.03), gm = g.log_uniform(1e-6, 1e-3), pin = g.uniform(0.2, 3);
        double t = impedance_match_T1(l, gm, pin);
        double at = buildup_solve(pin, {t, l, gm}).p_circ;
        CHECK(buildup_solve(pin, {t * 1.05, l, gm}).p_circ < at);
        CHECK(buildup_solve(pin, {t * 0.95, l, gm}).p_circ < at);
    }
}

TEST_CASE("impedance match grows with design power") {
    double prev = 0;
    for (double p : {0.1, 0.5, 1.0, 2.0}) {
        double t = impedance_match_T1(0.01, 1e-4, p);
        CHECK(t > prev);
        prev = t;
    }
}
