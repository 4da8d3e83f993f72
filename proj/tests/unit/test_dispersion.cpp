#include "chi2/dispersion.hpp"
#include "chi2/errors.hpp"
#include "frozen_oracles.hpp"
#include "gen.hpp"

#include "approx.hpp"

#include <doctest.h>

#include <cmath>

using namespace chi2;

namespace {
const Constants& K = default_constants();
auto nm = SpectralLine::from_nm;
double n_o(double l, double t = 20) { return principal_index(K.bbo, Polarization::Ordinary, nm(l), t); }
double n_e(double l, double t = 20) { return principal_index(K.bbo, Polarization::Extraordinary, nm(l), t); }
double ln_e(double l, double t) { return principal_index(K.linbo3, Polarization::Extraordinary, nm(l), t); }
} // namespace

TEST_CASE("BBO principal indices match the Sellmeier oracle") {
    CHECK(n_o(313.171) == approx(oracle::bbo_no_313p171).epsilon(1e-12));
    CHECK(n_e(313.171) == approx(oracle::bbo_ne_313p171).epsilon(1e-12));
    CHECK(n_o(626.342) == approx(oracle::bbo_no_626p342).epsilon(1e-12));
    CHECK(n_e(626.342) == approx(oracle::bbo_ne_626p342).epsilon(1e-12));
    CHECK(n_o(700.0) == approx(oracle::bbo_no_700p0).epsilon(1e-12));
    CHECK(n_e(1064.0) == approx(oracle::bbo_ne_1064p0).epsilon(1e-12));
}

TEST_CASE("LiNbO3 extraordinary index matches the temperature-dependent oracle") {
    CHECK(ln_e(1051.140, 20) == approx(oracle::ln_ne_1051_20p0).epsilon(1e-12));
    CHECK(ln_e(1549.850, 20) == approx(oracle::ln_ne_1550_20p0).epsilon(1e-12));
    CHECK(ln_e(1051.140, 196.5) == approx(oracle::ln_ne_1051_196p5).epsilon(1e-12));
    CHECK(ln_e(1549.850, 196.5) == approx(oracle::ln_ne_1550_196p5).epsilon(1e-12));
}

TEST_CASE("refractive_index at angle") {
    const double no = n_o(313.171), ne = n_e(313.171);
    RaySpec e0{Polarization::Extraordinary, 0.0};
    RaySpec e90{Polarization::Extraordinary, pi / 2};
    CHECK(refractive_index(K.bbo, e0, nm(313.171), 20) == approx(no).epsilon(1e-14));
    CHECK(refractive_index(K.bbo, e90, nm(313.171), 20) == ne);
    CHECK(refractive_index(K.bbo, {}, nm(626.342), 20) == n_o(626.342));
}

TEST_CASE("out-of-band and unsupported requests") {
    CHECK_THROWS_AS(n_o(2000.0), OutOfBand);
    CHECK_THROWS_AS(n_o(150.0), OutOfBand);
    CHECK_THROWS_AS(ln_e(1051.140, 300.0), OutOfBand);
    CHECK_THROWS_AS(ln_e(300.0, 100.0), OutOfBand);
    CHECK_THROWS_AS(principal_index(K.linbo3, Polarization::Ordinary, nm(1051.140), 100), InvalidParam);
}

TEST_CASE("property: extraordinary index lies between the principal values") {
    Gen g(11);
    for (int i = 0; i < 200; ++i) {
        double l = g.uniform(200, 1600), th = g.uniform(0, pi / 2);
        double no = n_o(l), ne = n_e(l);
        double n = extraordinary_index_at_angle(no, ne, th);
        CHECK(n <= no + 1e-15);
        CHECK(n >= ne - 1e-15);
    }
}

TEST_CASE("property: normal dispersion over the band") {
    Gen g(12);
    for (int i = 0; i < 200; ++i) {
        double l = g.uniform(400, 1500);
        CHECK(n_o(l) > n_o(l + 50));
        CHECK(ln_e(l, 100) > ln_e(l + 50, 100));
        // thermo-optic coefficient positive for n_e in this range
        CHECK(ln_e(l, 150) > ln_e(l, 50));
    }
}
