#pragma once

#include "chi2/units.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace chi2 {

using cplx = std::complex<double>;

// 2x2 ray matrix in reduced coordinates (y, n*y')
struct Abcd {
    double a = 1, b = 0, c = 0, d = 1;

    double det() const { return a * d - b * c; }
    Abcd inverse() const { return {d, -b, -c, a}; }
    cplx apply(cplx q) const { return (a * q + b) / (c * q + d); }
    double half_trace() const { return 0.5 * (a + d); }
};

// this applied after rhs
Abcd operator*(const Abcd& lhs, const Abcd& rhs);

enum class Plane { Tangential, Sagittal };
enum class Axis { X, Y };

enum class ElementKind {
    FreeSpace,
    ThinLens,
    OffAxisMirror,
    BrewsterCrystal,
    FlatInterface,
    CurvedInterface,
    CylindricalLens
};

struct RayElement {
    ElementKind kind;
    Abcd m_x;  // tangential
    Abcd m_y;  // sagittal
    double index_before = 0.0;  // interfaces only
    double index_after = 0.0;   // 0 keeps the ambient index
    double transmittance = 1.0;
    std::string label;
};

RayElement free_space(double length, double n = 1.0);
RayElement thin_lens(double f);
RayElement off_axis_mirror(double radius, double alpha_full);
RayElement brewster_crystal(double length, double n);
RayElement flat_interface(double n1, double n2);
// radius > 0 when the center of curvature lies downstream
RayElement curved_interface(double radius, double n1, double n2);
RayElement cylindrical_lens(double f, Axis axis);

// focal lengths of an off-axis spherical mirror, alpha_full = twice the incidence angle
double mirror_focal_tangential(double radius, double alpha_full);
double mirror_focal_sagittal(double radius, double alpha_full);

struct AstigmaticBeam {
    cplx q_x;  // reduced: q / n
    cplx q_y;
    SpectralLine line = SpectralLine::from_nm(1000.0);
    double ambient_index = 1.0;
    double power = 0.0;

    // beam at its waist in a medium of index n
    static AstigmaticBeam at_waist(double w_x, double w_y, const SpectralLine& line, double n = 1.0,
                                   double power = 0.0);
    double width_x() const;  // 1/e^2 radius at this plane
    double width_y() const;
};

AstigmaticBeam propagate(const AstigmaticBeam& beam, const std::vector<RayElement>& elements);
std::vector<RayElement> reversed(const std::vector<RayElement>& elements);
Abcd compose(const std::vector<RayElement>& elements, Plane plane);

struct WaistReport {
    double w0_x = 0, w0_y = 0;
    double z_x = 0, z_y = 0;  // physical distance from the reference plane, downstream positive
    double ellipticity = 1;
};

WaistReport waist_report(const AstigmaticBeam& beam);
double waist_from_q(cplx q_reduced, const SpectralLine& line);
// 1/e^2 radius at the plane of q
double width_from_q(cplx q_reduced, const SpectralLine& line);

struct InterfaceWaistReport {
    WaistReport inside;              // waist in the medium, z from the interface
    double free_space_distance = 0;  // waist distance if the interface were absent
    std::optional<double> quoted_w0;
};

InterfaceWaistReport interface_waist_shift(const AstigmaticBeam& converging, double n,
                                           std::optional<double> quoted_w0 = std::nullopt);

struct TelescopeSolution {
    double separation = 0;
    std::optional<double> distance_to_target;  // empty when the output is collimated
    double achieved_waist = 0;
};

// input: beam at the first lens. target: waist radius.
TelescopeSolution telescope_solve(const AstigmaticBeam& input, double target_waist, double f1,
                                  double f2);

// Fraction of power coupled between two beams compared at the same plane (per axis, product).
double mode_overlap(cplx q1_x, cplx q1_y, cplx q2_x, cplx q2_y);
double mode_overlap_1d(cplx q1, cplx q2);

struct ModeMatchLens {
    double f;
    double position;  // from the input plane
};

struct ModeMatchSolution {
    std::vector<ModeMatchLens> lenses;
    double target_position = 0;  // target waist plane, from the input plane
    double overlap = 0;
};

struct ModeMatchOptions {
    std::vector<double> stock = {0.050, 0.075, 0.100, 0.150, 0.200};
    double first_lens_distance = 0.100;
    double max_separation = 1.0;
    double min_overlap = 0.99;
};

// input: beam at the input plane. target: waist report of the cavity mode (at its waist).
ModeMatchSolution mode_match_solve(const AstigmaticBeam& input, const WaistReport& target,
                                   const ModeMatchOptions& opt = {});

} // namespace chi2
