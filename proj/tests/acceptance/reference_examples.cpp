// Reference design numbers that the models do not reproduce. Kept as running checks.

#include "chi2/buildup.hpp"
#include "chi2/cavity.hpp"
#include "chi2/errors.hpp"

#include "approx.hpp"

#include <doctest.h>

#include <cmath>

using namespace chi2;

TEST_CASE("Layout B solve reproduces the quoted waists") {
    auto m = solve_eigenmode(layout_b());
    CHECK(m.crystal_waists.w0_x * 1e6 == approx(36.7).epsilon(0.05));
    CHECK(m.crystal_waists.w0_y * 1e6 == approx(23.6).epsilon(0.05));
    CHECK(m.secondary_waists.w0_x * 1e6 == approx(155.3).epsilon(0.05));
    CHECK(m.secondary_waists.w0_y * 1e6 == approx(154.3).epsilon(0.05));
}

TEST_CASE("optimizer at L_long = 290 mm keeps d_mc and the h ratio") {
    auto ta = layout_a();
    auto tb = layout_b();
    tb.l_long = 0.290;
    auto a = optimize_layout(ta);
    auto b = optimize_layout(tb);
    CHECK(rad2deg(b.layout.alpha_full) == approx(28.6).epsilon(1.0 / 28.6));
    CHECK(b.layout.d_mc * 1e3 == approx(24.2).epsilon(0.3 / 24.2));
    CHECK(b.focus.h / a.focus.h == approx(0.92).epsilon(0.03 / 0.92));
    CHECK(b.mode.secondary_waists.ellipticity <= 1.01);
}

TEST_CASE("Layout B output correction lens") {
    auto l = layout_b();
    auto m = solve_eigenmode(l);
    OutputCorrection oc;
    REQUIRE_NOTHROW(oc = output_correction(l, m));
    REQUIRE(oc.f);
    CHECK(std::abs(*oc.f) >= 0.05);
    CHECK(std::abs(*oc.f) <= 0.11);
    CHECK(oc.distance_from_m1 >= 0.04);
    CHECK(oc.distance_from_m1 <= 0.08);
}

TEST_CASE("Brewster SH reflection at the Layout B geometry") {
    double n = crystal_index(layout_b());
    CHECK(brewster_sh_reflectance(n, std::atan(1.0 / n)) == approx(0.16).epsilon(0.03 / 0.16));
}

TEST_CASE("calibrated buildup is almost linear at the operating point") {
    BuildupObservations obs;
    auto cal = calibrate_buildup(obs);
    BuildupParams p{obs.t1, cal.l_passive, cal.gamma, obs.r_brewster};
    double s = buildup_log_slope(obs.p_in_ref, p);
    CHECK(s >= 0.9);
    CHECK(s <= 1.1);
}

TEST_CASE("conversion never falls once the cavity is loaded") {
    BuildupObservations obs;
    auto cal = calibrate_buildup(obs);
    BuildupParams p{obs.t1, cal.l_passive, cal.gamma, obs.r_brewster};
    double prev = 0;
    for (int k = 1; k <= 40; ++k) {
        double c = buildup_solve(0.25 * k, p).conversion_total;
        CHECK(c >= prev - 1e-12);
        prev = c;
    }
}
