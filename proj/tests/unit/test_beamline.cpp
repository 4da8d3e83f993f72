#include "chi2/beamline.hpp"
#include "chi2/dispersion.hpp"
#include "chi2/errors.hpp"
#include "frozen_oracles.hpp"
#include "gen.hpp"

#include "approx.hpp"

#include <doctest.h>

#include <cmath>

using namespace chi2;

namespace {
auto nm = SpectralLine::from_nm;

RayElement random_element(Gen& g) {
    switch (g.integer(0, 6)) {
    case 0: return free_space(g.uniform(0, 1), g.uniform(1, 2.5));
    case 1: return thin_lens(g.uniform(0.02, 0.5) * (g.integer(0, 1) ? 1 : -1));
    case 2: return off_axis_mirror(g.uniform(0.02, 0.5), g.uniform(0, deg2rad(60)));
    case 3: return brewster_crystal(g.uniform(0.001, 0.05), g.uniform(1.3, 2.4));
    case 4: return flat_interface(g.uniform(1, 2.5), g.uniform(1, 2.5));
    case 5: return curved_interface(g.uniform(0.02, 0.5) * (g.integer(0, 1) ? 1 : -1), g.uniform(1, 2), g.uniform(1, 2));
    default: return cylindrical_lens(g.uniform(0.05, 0.5), g.integer(0, 1) ? Axis::X : Axis::Y);
    }
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
} // namespace

TEST_CASE("element closed forms") {
    auto m0 = off_axis_mirror(0.050, 0.0);
    CHECK(-1 / m0.m_x.c == approx(0.025).epsilon(1e-14));
    CHECK(-1 / m0.m_y.c == approx(0.025).epsilon(1e-14));
    auto m30 = off_axis_mirror(0.050, deg2rad(30));
    CHECK(-1 / m30.m_x.c == approx(0.025 * std::cos(deg2rad(15))).epsilon(1e-14));
    CHECK(-1 / m30.m_y.c == approx(0.025 / std::cos(deg2rad(15))).epsilon(1e-14));
    auto bc = brewster_crystal(0.010, 1.667);
    CHECK(bc.m_x.b == approx(0.010 / std::pow(1.667, 3)).epsilon(1e-14));
    CHECK(bc.m_y.b == approx(0.010 / 1.667).epsilon(1e-14));
    CHECK_THROWS_AS(thin_lens(0.0), InvalidParam);
    CHECK_THROWS_AS(off_axis_mirror(0.0, 0.1), InvalidParam);
}

TEST_CASE("property: unimodularity of elements and paths (1e-12)") {
    Gen g(41);
    for (int i = 0; i < 200; ++i) {
        auto e = random_element(g);
        CHECK(std::abs(e.m_x.det() - 1) < 1e-12);
        CHECK(std::abs(e.m_y.det() - 1) < 1e-12);
    }
    for (int i = 0; i < 150; ++i) {
        std::vector<RayElement> path;
        int n = g.integer(2, 12);
        for (int k = 0; k < n; ++k) path.push_back(random_element(g));
        for (Plane p : {Plane::Tangential, Plane::Sagittal}) {
            Abcd m = compose(path, p);
            // scale-aware: det of a product of unimodular factors
            double scale = std::max({1.0, std::abs(m.a * m.d), std::abs(m.b * m.c)});
            CHECK(std::abs(m.det() - 1) < 1e-12 * scale);
        }
    }
}

TEST_CASE("property: composition associativity and reversibility") {
    Gen g(42);
    int checked = 0;
    for (int i = 0; i < 300 && checked < 120; ++i) {
        auto beam = AstigmaticBeam::at_waist(g.uniform(20e-6, 2e-3), g.uniform(20e-6, 2e-3), nm(g.uniform(400, 1600)));
        std::vector<RayElement> path;
        int n = g.integer(2, 8);
        for (int k = 0; k < n; ++k) path.push_back(random_element(g));
        AstigmaticBeam whole;
        try {
            whole = propagate(beam, path);
        } catch (const NonPhysical&) {
            continue;
        }
        std::vector<RayElement> a(path.begin(), path.begin() + 1), b(path.begin() + 1, path.end());
        auto split = propagate(propagate(beam, a), b);
        CHECK(rel(split.q_x, whole.q_x) < 1e-12);
        CHECK(rel(split.q_y, whole.q_y) < 1e-12);
        auto back = propagate(whole, reversed(path));
        CHECK(rel(back.q_x, beam.q_x) < 1e-9);
        CHECK(rel(back.q_y, beam.q_y) < 1e-9);
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_CASE("property: off-axis astigmatism ordering") {
    Gen g(43);
    for (int i = 0; i < 100; ++i) {
        double R = g.uniform(0.01, 1), a = g.uniform(1e-3, deg2rad(80));
        CHECK(mirror_focal_tangential(R, a) < mirror_focal_sagittal(R, a));
    }
}

TEST_CASE("propagation basics") {
    auto b = AstigmaticBeam::at_waist(1e-3, 2e-3, nm(1000));
    auto same = propagate(b, {free_space(0.0)});
    CHECK(same.q_x == b.q_x);
    auto wr = waist_report(b);
    CHECK(wr.z_x == 0.0);
    CHECK(wr.w0_x == approx(1e-3).epsilon(1e-14));
    CHECK(wr.w0_y == approx(2e-3).epsilon(1e-14));
    CHECK(waist_report(AstigmaticBeam::at_waist(1e-3, 1e-3, nm(1000))).ellipticity == 1.0);

    auto wide = AstigmaticBeam::at_waist(50e-3, 50e-3, nm(1000));
    auto focused = waist_report(propagate(wide, {thin_lens(0.1)}));
    CHECK(std::abs(focused.z_x - 0.1) < 1e-9);

    auto pump = AstigmaticBeam::at_waist(1.05e-3, 1.05e-3, nm(1051.140));
    auto pf = waist_report(propagate(pump, {thin_lens(0.125)}));
    CHECK(pf.w0_x == approx(40e-6).epsilon(3.0 / 40));
    CHECK(pf.z_x == approx(0.125).epsilon(0.01));
}

TEST_CASE("waist behind a flat interface") {
    auto pump = AstigmaticBeam::at_waist(1.05e-3, 1.05e-3, nm(1051.140));
    auto at_face = propagate(pump, {thin_lens(0.125), free_space(0.115)});
    auto r = interface_waist_shift(at_face, 2.15, 58e-6);
    CHECK(r.inside.z_x == approx(0.020).epsilon(0.003 / 0.020));
    CHECK(r.inside.w0_x == approx(waist_report(at_face).w0_x).epsilon(1e-12));
    CHECK(*r.quoted_w0 == 58e-6);
    auto vac = interface_waist_shift(at_face, 1.0);
    CHECK(vac.inside.z_x == approx(vac.free_space_distance).epsilon(1e-12));
}

TEST_CASE("Galilean telescope") {
    auto sig = AstigmaticBeam::at_waist(1.18e-3, 1.18e-3, nm(1549.850));
    auto t = telescope_solve(sig, 45e-6, -0.050, 0.060);
    CHECK(t.separation == approx(0.040).epsilon(0.005 / 0.040));
    REQUIRE(t.distance_to_target);
    double n = principal_index(default_constants().linbo3, Polarization::Extraordinary, nm(1549.850), 196.5);
    double face = *t.distance_to_target - 0.020 / n;
    CHECK(face == approx(0.171).epsilon(0.010 / 0.171));
    CHECK(t.achieved_waist == approx(45e-6).epsilon(1e-6 / 45e-6));

    auto afocal = telescope_solve(sig, 1.18e-3 * 0.060 / 0.050, -0.050, 0.060);
    CHECK(afocal.separation == approx(0.010).epsilon(1e-9));
    CHECK(!afocal.distance_to_target);
    CHECK_THROWS_AS(telescope_solve(sig, 5e-3, -0.050, 0.060), Unreachable);
}

TEST_CASE("overlap integral against the field-grid oracle") {
    CHECK(mode_overlap_1d({0.0, 0.05}, {0.0, 0.08}) == approx(oracle::ov_a).epsilon(1e-8));
    CHECK(mode_overlap_1d({0.02, 0.05}, {-0.01, 0.03}) == approx(oracle::ov_b).epsilon(1e-8));
    CHECK(mode_overlap_1d({0.3, 0.12}, {0.25, 0.10}) == approx(oracle::ov_c).epsilon(1e-8));
    CHECK(mode_overlap_1d({-0.1, 0.002}, {-0.1, 0.004}) == approx(oracle::ov_d).epsilon(1e-8));
    CHECK(mode_overlap({0, 0.05}, {0, 0.05}, {0, 0.05}, {0, 0.05}) == approx(1.0).epsilon(1e-15));
}

TEST_CASE("mode matching") {
    auto in = AstigmaticBeam::at_waist(1e-3, 1e-3, nm(626.342));
    WaistReport target{154.8e-6, 154.8e-6, 0, 0, 1.0};
    auto s = mode_match_solve(in, target);
    CHECK(s.overlap > 0.99);
    CHECK(s.lenses.size() == 2);
    CHECK(oracle::mm_best_overlap > 0.99);
    CHECK(oracle::mm_configs_above_0p99 >= 1);

    // replay the lens train and verify the overlap independently
    std::vector<RayElement> path;
    double pos = 0;
    for (auto& l : s.lenses) {
        path.push_back(free_space(l.position - pos));
        path.push_back(thin_lens(l.f));
        pos = l.position;
    }
    path.push_back(free_space(s.target_position - pos));
    auto out = propagate(in, path);
    auto t = AstigmaticBeam::at_waist(154.8e-6, 154.8e-6, nm(626.342));
    CHECK(mode_overlap(out.q_x, out.q_y, t.q_x, t.q_y) == approx(s.overlap).epsilon(1e-9));

    WaistReport same{1e-3, 1e-3, 0, 0, 1.0};
    CHECK(mode_match_solve(in, same).lenses.empty());

    auto bad = propagate(AstigmaticBeam::at_waist(1.548e-3, 1.548e-3, nm(626.342)), {free_space(20.0)});
    ModeMatchOptions none;
    none.stock.clear();
    CHECK_THROWS_AS(mode_match_solve(bad, target, none), Unreachable);
}
