#include "chi2/cavity.hpp"

#include "chi2/dispersion.hpp"
#include "chi2/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace chi2 {

namespace {

template <class F>
double bisect_root(F f, double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        double fm = f(m);
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// boundary between a true and a false point of a predicate
template <class P>
double bisect_edge(P pred, double inside, double outside) {
    for (int i = 0; i < 60; ++i) {
        double m = 0.5 * (inside + outside);
        if (pred(m)) inside = m;
        else outside = m;
    }
    return inside;
}

cplx eigen_q(const Abcd& m) {
    double disc = (m.a - m.d) * (m.a - m.d) + 4 * m.b * m.c;
    cplx root = std::sqrt(cplx(disc, 0));
    cplx q1 = ((m.a - m.d) + root) / (2 * m.c);
    cplx q2 = ((m.a - m.d) - root) / (2 * m.c);
    return q1.imag() > 0 ? q1 : q2;
}

} // namespace

void validate(const BowtieLayout& l) {
    if (!(l.d_mc > 0 && l.l_long > 0 && l.r_mirror > 0))
        throw InvalidParam("layout lengths must be positive");
    if (!(l.alpha_full >= 0 && l.alpha_full < pi / 2)) throw InvalidParam("alpha_full outside [0, 90) deg");
    validate(l.crystal);
}

BowtieLayout layout_a() { return BowtieLayout{}; }

BowtieLayout layout_b() {
    BowtieLayout l;
    l.l_long = 0.290;
    l.alpha_full = deg2rad(28.6);
    return l;
}

double crystal_index(const BowtieLayout& l, const Constants& k) {
    // type-I fundamental is the ordinary wave
    return principal_index(k.material(l.crystal.material), Polarization::Ordinary, l.fundamental,
                           l.crystal.temperature_c);
}

std::vector<RayElement> half_round_trip(const BowtieLayout& l, double n) {
    return {brewster_crystal(l.crystal.length / 2, n), free_space(l.d_mc),
            off_axis_mirror(l.r_mirror, l.alpha_full), free_space(l.l_long / 2)};
}

std::vector<RayElement> round_trip(const BowtieLayout& l, double n) {
    // plane mirrors are identities in reduced coordinates
    return {brewster_crystal(l.crystal.length / 2, n), free_space(l.d_mc),
            off_axis_mirror(l.r_mirror, l.alpha_full), free_space(l.l_long),
            off_axis_mirror(l.r_mirror, l.alpha_full), free_space(l.d_mc),
            brewster_crystal(l.crystal.length / 2, n)};
}

Abcd round_trip_matrix(const BowtieLayout& l, Plane plane, const Constants& k) {
    validate(l);
    return compose(round_trip(l, crystal_index(l, k)), plane);
}

EigenmodeSolution solve_eigenmode(const BowtieLayout& l, const Constants& k) {
    validate(l);
    double n = crystal_index(l, k);
    auto rt = round_trip(l, n);
    Abcd mx = compose(rt, Plane::Tangential), my = compose(rt, Plane::Sagittal);
    EigenmodeSolution s;
    s.crystal_index = n;
    s.stability_x = std::abs(mx.half_trace());
    s.stability_y = std::abs(my.half_trace());
    for (auto [m, name] : {std::pair{s.stability_x, "tangential"}, std::pair{s.stability_y, "sagittal"}}) {
        if (!(m < 1.0)) {
            char buf[120];
            std::snprintf(buf, sizeof buf, "%s plane: |A+D|/2 = %.6g (margin %.3g)", name, m, 1.0 - m);
            throw Unstable(buf);
        }
    }
    s.q_x = eigen_q(mx);
    s.q_y = eigen_q(my);

    const SpectralLine& line = l.fundamental;
    double we_x = waist_from_q(s.q_x, line), we_y = waist_from_q(s.q_y, line);
    // Brewster refraction stretches the tangential beam by n inside the crystal
    s.crystal_waists.w0_x = n * we_x;
    s.crystal_waists.w0_y = we_y;
    s.crystal_waists.z_x = -s.q_x.real() * n;
    s.crystal_waists.z_y = -s.q_y.real() * n;
    s.crystal_waists.ellipticity = std::max(s.crystal_waists.w0_x, s.crystal_waists.w0_y) /
                                   std::min(s.crystal_waists.w0_x, s.crystal_waists.w0_y);

    AstigmaticBeam b{s.q_x, s.q_y, line, 1.0, 0.0};
    s.secondary_waists = waist_report(propagate(b, half_round_trip(l, n)));

    double len = l.crystal.length;
    s.zeta_x = (len / (n * n * n)) / (2 * s.q_x.imag());
    s.zeta_y = (len / n) / (2 * s.q_y.imag());
    s.B = walkoff_B_for(line, l.crystal, k);
    return s;
}

BowtieLayout with_param(BowtieLayout l, LayoutParam p, double v) {
    switch (p) {
    case LayoutParam::DMc: l.d_mc = v; break;
    case LayoutParam::LLong: l.l_long = v; break;
    case LayoutParam::AlphaFull: l.alpha_full = v; break;
    }
    return l;
}

static StabilityRow stability_row(const BowtieLayout& l, LayoutParam p, double v, double n) {
    BowtieLayout x = with_param(l, p, v);
    auto rt = round_trip(x, n);
    double mx = compose(rt, Plane::Tangential).half_trace();
    double my = compose(rt, Plane::Sagittal).half_trace();
    return {v, mx, my, std::abs(mx) < 1, std::abs(my) < 1};
}

std::vector<StabilityRow> stability_scan_serial(const BowtieLayout& l, LayoutParam p,
                                                const std::vector<double>& values,
                                                const Constants& k) {
    double n = crystal_index(l, k);
    std::vector<StabilityRow> rows(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) rows[i] = stability_row(l, p, values[i], n);
    return rows;
}

std::vector<StabilityRow> stability_scan_omp(const BowtieLayout& l, LayoutParam p,
                                             const std::vector<double>& values,
                                             const Constants& k) {
    double n = crystal_index(l, k);
    std::vector<StabilityRow> rows(values.size());
    const long count = static_cast<long>(values.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) rows[i] = stability_row(l, p, values[i], n);
    return rows;
}

std::optional<StabilityWindow> stability_window(const BowtieLayout& l, LayoutParam p, Plane plane,
                                                double lo, double hi, int steps,
                                                const Constants& k) {
    double n = crystal_index(l, k);
    auto m = [&](double v) {
        return compose(round_trip(with_param(l, p, v), n), plane).half_trace();
    };
    auto stable = [&](double v) { return std::abs(m(v)) < 1; };
    std::optional<double> first, last;
    double prev = lo;
    bool prev_ok = stable(lo);
    if (prev_ok) first = lo;
    for (int i = 1; i <= steps; ++i) {
        double v = lo + (hi - lo) * i / steps;
        bool ok = stable(v);
        if (ok && !prev_ok && !first) first = bisect_edge(stable, v, prev);
        if (!ok && prev_ok && first && !last) last = bisect_edge(stable, prev, v);
        prev = v;
        prev_ok = ok;
    }
    if (!first) return std::nullopt;
    if (!last) last = hi;
    // land the edges on |m| = 1 to bisection precision
    auto edge = [&](double v, double dir) {
        double target = m(v) > 0 ? 1.0 : -1.0;
        double other = v + dir * (hi - lo) / steps;
        if ((m(other) - target > 0) == (m(v) - target > 0)) return v;
        return bisect_root([&](double x) { return m(x) - target; }, v, other);
    };
    double a = *first > lo ? edge(*first, -1) : lo;
    double b = *last < hi ? edge(*last, +1) : hi;
    return StabilityWindow{a, b};
}

std::optional<StabilityWindow> overlap_window(const BowtieLayout& l, LayoutParam p, double lo,
                                              double hi, int steps, const Constants& k) {
    auto t = stability_window(l, p, Plane::Tangential, lo, hi, steps, k);
    auto s = stability_window(l, p, Plane::Sagittal, lo, hi, steps, k);
    if (!t || !s) return std::nullopt;
    double a = std::max(t->lo, s->lo), b = std::min(t->hi, s->hi);
    if (!(b > a)) return std::nullopt;
    return StabilityWindow{a, b};
}

BowtieLayout compensated_start(const BowtieLayout& templ, const Constants& k) {
    double n = crystal_index(templ, k);
    double r = templ.r_mirror;
    // d where |A+D|/2 crosses zero for one plane
    auto zero_d = [&](double alpha, Plane plane) -> std::optional<double> {
        auto m = [&](double d) {
            BowtieLayout x = templ;
            x.alpha_full = alpha;
            x.d_mc = d;
            return compose(round_trip(x, n), plane).half_trace();
        };
        double lo = 0.3 * r, hi = 0.8 * r;
        const int steps = 1000;
        double prev = lo, pm = m(lo);
        for (int i = 1; i <= steps; ++i) {
            double d = lo + (hi - lo) * i / steps;
            double v = m(d);
            if ((v > 0) != (pm > 0)) return bisect_root(m, prev, d);
            prev = d;
            pm = v;
        }
        return std::nullopt;
    };
    auto gap = [&](double alpha) -> std::optional<double> {
        auto t = zero_d(alpha, Plane::Tangential), s = zero_d(alpha, Plane::Sagittal);
        if (!t || !s) return std::nullopt;
        return *t - *s;
    };
    std::optional<double> prev_gap;
    double prev_a = 0;
    for (double deg = 2.0; deg <= 60.0; deg += 1.0) {
        double a = deg2rad(deg);
        auto g = gap(a);
        if (g && prev_gap && ((*g > 0) != (*prev_gap > 0))) {
            double root = bisect_root([&](double x) { return gap(x).value_or(0.0); }, prev_a, a);
            BowtieLayout out = templ;
            out.alpha_full = root;
            out.d_mc = *zero_d(root, Plane::Tangential);
            return out;
        }
        prev_gap = g;
        prev_a = a;
    }
    throw Infeasible("no off-axis angle centers both stability windows");
}

LayoutOptimum optimize_layout(const BowtieLayout& templ, const OptimizeOptions& opt,
                              const Constants& k) {
    validate(templ);
    BowtieLayout start = compensated_start(templ, k);

    auto feasible = [&](const BowtieLayout& l) -> std::optional<EigenmodeSolution> {
        if (!(l.d_mc > 0 && l.alpha_full > 0 && l.alpha_full < pi / 2)) return std::nullopt;
        try {
            EigenmodeSolution s = solve_eigenmode(l, k);
            if (s.stability_x > opt.max_stability || s.stability_y > opt.max_stability)
                return std::nullopt;
            if (s.secondary_waists.ellipticity > opt.max_secondary_ellipticity) return std::nullopt;
            return s;
        } catch (const Unstable&) {
            return std::nullopt;
        }
    };
    auto objective = [&](const BowtieLayout& l) {
        auto s = feasible(l);
        if (!s) return -1.0;
        return peak_h(MixingProfile(s->zeta_x, s->zeta_y, s->B)).h;
    };
    if (!feasible(start)) throw Infeasible("compensated starting layout violates the constraints");

    BowtieLayout cur = start;
    struct Coord {
        LayoutParam p;
        double step;
        double reach;
    };
    const Coord coords[] = {{LayoutParam::DMc, 2e-5, 5e-3},
                            {LayoutParam::AlphaFull, deg2rad(0.02), deg2rad(6.0)}};
    auto get = [](const BowtieLayout& l, LayoutParam p) {
        return p == LayoutParam::DMc ? l.d_mc : l.alpha_full;
    };

    int cycle = 0;
    for (; cycle < opt.max_cycles; ++cycle) {
        double moved = 0;
        for (const Coord& c : coords) {
            double x0 = get(cur, c.p);
            auto ok = [&](double v) { return feasible(with_param(cur, c.p, v)).has_value(); };
            // feasible segment through the current point
            auto reach = [&](double dir) {
                double inside = x0;
                for (double s = c.step; s <= c.reach; s += c.step) {
                    double v = x0 + dir * s;
                    if (!ok(v)) return bisect_edge(ok, inside, v);
                    inside = v;
                }
                return inside;
            };
            double lo = reach(-1), hi = reach(+1);
            if (hi - lo < 1e-12) continue;
            std::uintmax_t iters = 200;
            auto r = boost::math::tools::brent_find_minima(
                [&](double v) { return -objective(with_param(cur, c.p, v)); }, lo, hi, 30, iters);
            double best = r.first;
            if (-r.second < objective(cur)) best = x0;
            double rel = std::abs(best - x0) / c.step;
            moved = std::max(moved, rel);
            cur = with_param(cur, c.p, best);
        }
        if (moved < 1e-3) break;
    }

    LayoutOptimum out;
    out.layout = cur;
    out.start = start;
    out.cycles = cycle + 1;
    out.mode = solve_eigenmode(cur, k);
    out.focus = optimize_sigma({out.mode.B, out.mode.zeta_x, out.mode.zeta_y, 0.0});
    return out;
}

double fresnel_reflectance(double n1, double n2, double incidence, FresnelPol pol) {
    if (!(n1 > 0 && n2 > 0)) throw InvalidParam("indices must be positive");
    if (!(incidence >= 0 && incidence < pi / 2)) throw InvalidParam("incidence outside [0, 90) deg");
    double st = n1 * std::sin(incidence) / n2;
    if (st >= 1.0) throw TotalInternalReflection("beyond the critical angle");
    double ci = std::cos(incidence), ct = std::sqrt(1 - st * st);
    double r = pol == FresnelPol::S ? (n1 * ci - n2 * ct) / (n1 * ci + n2 * ct)
                                    : (n2 * ci - n1 * ct) / (n2 * ci + n1 * ct);
    return r * r;
}

double brewster_sh_reflectance(double n_sh, double incidence) {
    return fresnel_reflectance(n_sh, 1.0, incidence, FresnelPol::S);
}

OutputCorrection output_correction(const BowtieLayout& l, const EigenmodeSolution& mode,
                                   const MirrorSubstrate& m1, const Constants& k) {
    double n = crystal_index(l, k);
    SpectralLine sh = second_harmonic(l.fundamental);
    // same reduced q as the fundamental: waist / sqrt(2) at half the wavelength
    AstigmaticBeam b{mode.q_x, mode.q_y, sh, 1.0, 0.0};
    b = propagate(b, {brewster_crystal(l.crystal.length / 2, n), free_space(l.d_mc),
                      curved_interface(m1.r_front, 1.0, m1.index),
                      free_space(m1.thickness, m1.index),
                      curved_interface(m1.r_back, m1.index, 1.0)});
    OutputCorrection out;
    // residual astigmatism that would need a lens beyond 1e6 Rayleigh ranges
    if (std::abs(b.q_x - b.q_y) <= 1e-6 * std::abs(b.q_x)) {
        out.distance_from_m1 = m1.thickness;
        out.width_at_lens = b.width_x();
        return out;
    }
    auto diff = [&](double z) {
        return width_from_q(b.q_x + z, sh) - width_from_q(b.q_y + z, sh);
    };
    const double zmax = 2.0;
    const int steps = 20000;
    double prev = 0, pd = diff(0);
    for (int i = 1; i <= steps; ++i) {
        double z = zmax * i / steps;
        double d = diff(z);
        if ((d > 0) != (pd > 0)) {
            double zc = bisect_root(diff, prev, z);
            cplx qx = b.q_x + zc, qy = b.q_y + zc;
            double p = (1.0 / qx).real() - (1.0 / qy).real();
            out.axis = p > 0 ? Axis::X : Axis::Y;
            out.f = 1.0 / std::abs(p);
            out.distance_from_m1 = m1.thickness + zc;
            out.width_at_lens = width_from_q(qx, sh);
            return out;
        }
        prev = z;
        pd = d;
    }
    throw Unreachable("tangential and sagittal widths never cross within 2 m of M1");
}

} // namespace chi2
