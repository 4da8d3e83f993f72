#include "chi2/beamline.hpp"

#include "chi2/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace chi2 {

namespace {

RayElement make(ElementKind kind, Abcd mx, Abcd my, const char* label) {
    RayElement e{kind, mx, my};
    e.label = label;
    return e;
}

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

} // namespace

Abcd operator*(const Abcd& l, const Abcd& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
            l.c * r.b + l.d * r.d};
}

RayElement free_space(double length, double n) {
    if (!(length >= 0)) throw InvalidParam("free-space length must be >= 0");
    if (!(n >= 1)) throw InvalidParam("index must be >= 1");
    Abcd m{1, length / n, 0, 1};
    return make(ElementKind::FreeSpace, m, m, "free space");
}

RayElement thin_lens(double f) {
    if (f == 0 || !std::isfinite(f)) throw InvalidParam("focal length must be finite and nonzero");
    Abcd m{1, 0, -1 / f, 1};
    return make(ElementKind::ThinLens, m, m, "lens");
}

double mirror_focal_tangential(double radius, double alpha_full) {
    return 0.5 * radius * std::cos(alpha_full / 2);
}

double mirror_focal_sagittal(double radius, double alpha_full) {
    return 0.5 * radius / std::cos(alpha_full / 2);
}

RayElement off_axis_mirror(double radius, double alpha_full) {
    if (radius == 0 || !std::isfinite(radius)) throw InvalidParam("mirror radius must be nonzero");
    if (!(alpha_full >= 0 && alpha_full < pi)) throw InvalidParam("off-axis angle outside [0, pi)");
    Abcd mx{1, 0, -1 / mirror_focal_tangential(radius, alpha_full), 1};
    Abcd my{1, 0, -1 / mirror_focal_sagittal(radius, alpha_full), 1};
    return make(ElementKind::OffAxisMirror, mx, my, "off-axis mirror");
}

RayElement brewster_crystal(double length, double n) {
    if (!(length >= 0)) throw InvalidParam("crystal length must be >= 0");
    if (!(n > 1)) throw InvalidParam("crystal index must exceed 1");
    Abcd mx{1, length / (n * n * n), 0, 1};
    Abcd my{1, length / n, 0, 1};
    return make(ElementKind::BrewsterCrystal, mx, my, "Brewster crystal");
}

RayElement flat_interface(double n1, double n2) {
    if (!(n1 >= 1 && n2 >= 1)) throw InvalidParam("indices must be >= 1");
    RayElement e = make(ElementKind::FlatInterface, Abcd{}, Abcd{}, "flat interface");
    e.index_before = n1;
    e.index_after = n2;
    return e;
}

RayElement curved_interface(double radius, double n1, double n2) {
    if (radius == 0 || !std::isfinite(radius)) throw InvalidParam("surface radius must be nonzero");
    if (!(n1 >= 1 && n2 >= 1)) throw InvalidParam("indices must be >= 1");
    Abcd m{1, 0, -(n2 - n1) / radius, 1};
    RayElement e = make(ElementKind::CurvedInterface, m, m, "curved interface");
    e.index_before = n1;
    e.index_after = n2;
    return e;
}

RayElement cylindrical_lens(double f, Axis axis) {
    if (f == 0 || !std::isfinite(f)) throw InvalidParam("focal length must be finite and nonzero");
    Abcd lens{1, 0, -1 / f, 1};
    if (axis == Axis::X) return make(ElementKind::CylindricalLens, lens, Abcd{}, "cylindrical lens x");
    return make(ElementKind::CylindricalLens, Abcd{}, lens, "cylindrical lens y");
}

AstigmaticBeam AstigmaticBeam::at_waist(double w_x, double w_y, const SpectralLine& line, double n,
                                        double power) {
    if (!(w_x > 0 && w_y > 0)) throw InvalidParam("waists must be positive");
    double lam = line.wavelength_m();
    return {cplx(0, pi * w_x * w_x / lam), cplx(0, pi * w_y * w_y / lam), line, n, power};
}

double width_from_q(cplx q, const SpectralLine& line) {
    double im = (1.0 / q).imag();
    return std::sqrt(-line.wavelength_m() / (pi * im));
}

double waist_from_q(cplx q, const SpectralLine& line) {
    return std::sqrt(line.wavelength_m() * q.imag() / pi);
}

double AstigmaticBeam::width_x() const { return width_from_q(q_x, line); }
double AstigmaticBeam::width_y() const { return width_from_q(q_y, line); }

AstigmaticBeam propagate(const AstigmaticBeam& beam, const std::vector<RayElement>& elements) {
    AstigmaticBeam b = beam;
    for (const auto& e : elements) {
        b.q_x = e.m_x.apply(b.q_x);
        b.q_y = e.m_y.apply(b.q_y);
        if (!(b.q_x.imag() > 0 && b.q_y.imag() > 0))
            throw NonPhysical("Im(q) <= 0 after " + e.label);
        if (e.index_after > 0) b.ambient_index = e.index_after;
        b.power *= e.transmittance;
    }
    return b;
}

std::vector<RayElement> reversed(const std::vector<RayElement>& elements) {
    std::vector<RayElement> out;
    out.reserve(elements.size());
    for (auto it = elements.rbegin(); it != elements.rend(); ++it) {
        RayElement e = *it;
        e.m_x = it->m_x.inverse();
        e.m_y = it->m_y.inverse();
        std::swap(e.index_before, e.index_after);
        e.transmittance = it->transmittance > 0 ? 1.0 / it->transmittance : 1.0;
        out.push_back(e);
    }
    return out;
}

Abcd compose(const std::vector<RayElement>& elements, Plane plane) {
    Abcd m;
    for (const auto& e : elements) m = (plane == Plane::Tangential ? e.m_x : e.m_y) * m;
    return m;
}

WaistReport waist_report(const AstigmaticBeam& beam) {
    WaistReport r;
    r.w0_x = waist_from_q(beam.q_x, beam.line);
    r.w0_y = waist_from_q(beam.q_y, beam.line);
    r.z_x = -beam.q_x.real() * beam.ambient_index;
    r.z_y = -beam.q_y.real() * beam.ambient_index;
    r.ellipticity = std::max(r.w0_x, r.w0_y) / std::min(r.w0_x, r.w0_y);
    return r;
}

InterfaceWaistReport interface_waist_shift(const AstigmaticBeam& converging, double n,
                                           std::optional<double> quoted_w0) {
    InterfaceWaistReport r;
    r.free_space_distance = -converging.q_x.real() * converging.ambient_index;
    AstigmaticBeam inside = propagate(converging, {flat_interface(converging.ambient_index, n)});
    r.inside = waist_report(inside);
    r.quoted_w0 = quoted_w0;
    return r;
}

TelescopeSolution telescope_solve(const AstigmaticBeam& input, double target_waist, double f1,
                                  double f2) {
    if (!(target_waist > 0)) throw InvalidParam("target waist must be positive");
    const SpectralLine& line = input.line;
    auto output = [&](double s) {
        return propagate(input, {thin_lens(f1), free_space(s), thin_lens(f2)}).q_x;
    };
    double afocal = f1 + f2;
    if (afocal > 0) {
        cplx q = output(afocal);
        double w = waist_from_q(q, line);
        double w_in = width_from_q(input.q_x, line);
        bool collimated_in = std::abs(input.q_x.real()) < 1e-12 * std::abs(input.q_x);
        if (collimated_in && std::abs(w - target_waist) <= 1e-9 * target_waist &&
            std::abs(w_in * std::abs(f2 / f1) - target_waist) <= 1e-9 * target_waist)
            return {afocal, std::nullopt, w};
    }
    // converging output lies on the long side of the afocal spacing
    double lo = std::max(afocal, 0.0) + 1e-9;
    double span = 20.0 * (std::abs(f1) + std::abs(f2));
    auto miss = [&](double s) { return waist_from_q(output(s), line) - target_waist; };
    const int steps = 4000;
    double prev_s = lo, prev_m = miss(lo);
    for (int i = 1; i <= steps; ++i) {
        double s = lo + span * i / steps;
        double m = miss(s);
        if ((m > 0) != (prev_m > 0)) {
            double root = bisect_root(miss, prev_s, s);
            cplx q = output(root);
            double z = -q.real();
            if (z > 0) return {root, z, waist_from_q(q, line)};
        }
        prev_s = s;
        prev_m = m;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "no lens spacing gives a %.4g um waist with f1 = %g mm, f2 = %g mm",
                  target_waist * 1e6, f1 * 1e3, f2 * 1e3);
    throw Unreachable(buf);
}

double mode_overlap_1d(cplx q1, cplx q2) {
    return 2.0 * std::sqrt(q1.imag() * q2.imag()) / std::abs(q1 - std::conj(q2));
}

double mode_overlap(cplx q1_x, cplx q1_y, cplx q2_x, cplx q2_y) {
    return mode_overlap_1d(q1_x, q2_x) * mode_overlap_1d(q1_y, q2_y);
}

ModeMatchSolution mode_match_solve(const AstigmaticBeam& input, const WaistReport& target,
                                   const ModeMatchOptions& opt) {
    const SpectralLine& line = input.line;
    AstigmaticBeam tgt = AstigmaticBeam::at_waist(target.w0_x, target.w0_y, line);
    double w_target = 0.5 * (target.w0_x + target.w0_y);

    auto overlap_at_waist = [&](const AstigmaticBeam& b, double* dist) {
        double z = -0.5 * (b.q_x.real() + b.q_y.real());
        *dist = z;
        AstigmaticBeam at = b;
        at.q_x += z;
        at.q_y += z;
        return mode_overlap(at.q_x, at.q_y, tgt.q_x, tgt.q_y);
    };

    ModeMatchSolution best;
    bool found = false;
    {
        double z = 0;
        double ov = overlap_at_waist(input, &z);
        if (z >= 0 && ov > opt.min_overlap) {
            best.target_position = z;
            best.overlap = ov;
            return best;
        }
    }
    const double p1 = opt.first_lens_distance;
    for (double fa : opt.stock) {
        for (double fb : opt.stock) {
            AstigmaticBeam after_a = propagate(input, {free_space(p1), thin_lens(fa)});
            auto out = [&](double s) { return propagate(after_a, {free_space(s), thin_lens(fb)}); };
            auto miss = [&](double s) { return waist_from_q(out(s).q_x, line) - w_target; };
            const int steps = 2000;
            double prev_s = 0, prev_m = miss(0);
            for (int i = 1; i <= steps; ++i) {
                double s = opt.max_separation * i / steps;
                double m = miss(s);
                if ((m > 0) != (prev_m > 0)) {
                    double root = bisect_root(miss, prev_s, s);
                    AstigmaticBeam o = out(root);
                    double z = 0;
                    double ov = overlap_at_waist(o, &z);
                    double total = p1 + root + z;
                    if (z > 0 && ov > opt.min_overlap && (!found || total < best.target_position)) {
                        found = true;
                        best.lenses = {{fa, p1}, {fb, p1 + root}};
                        best.target_position = total;
                        best.overlap = ov;
                    }
                }
                prev_s = s;
                prev_m = m;
            }
        }
    }
    if (!found) throw Unreachable("no lens pair from the stock list reaches the requested overlap");
    return best;
}

} // namespace chi2
