#pragma once

#include "chi2/beamline.hpp"
#include "chi2/focusing.hpp"
#include "chi2/materials.hpp"
#include "chi2/phasematch.hpp"

#include <optional>
#include <vector>

namespace chi2 {

struct BowtieLayout {
    double d_mc = 0.0242;        // spherical mirror to crystal face, each side
    double l_long = 0.5276;      // mirror to mirror via the two plane mirrors
    double alpha_full = deg2rad(30.0);
    double r_mirror = 0.050;
    CrystalSpec crystal{MaterialId::BBO, 0.010, AngleCut{0.0, 0.0, true}, 20.0};
    SpectralLine fundamental = SpectralLine::from_nm(626.342);
};

void validate(const BowtieLayout& layout);

// the two reference layouts
BowtieLayout layout_a();
BowtieLayout layout_b();

double crystal_index(const BowtieLayout& layout, const Constants& k = default_constants());

// crystal center -> half crystal -> d_mc -> mirror -> half of the long path
std::vector<RayElement> half_round_trip(const BowtieLayout& layout, double n);
std::vector<RayElement> round_trip(const BowtieLayout& layout, double n);

Abcd round_trip_matrix(const BowtieLayout& layout, Plane plane,
                       const Constants& k = default_constants());

struct EigenmodeSolution {
    cplx q_x, q_y;  // reduced, crystal center
    WaistReport crystal_waists;    // physical, inside the crystal
    WaistReport secondary_waists;  // midway between the plane mirrors
    double stability_x = 0, stability_y = 0;  // |A+D|/2
    double zeta_x = 0, zeta_y = 0, B = 0;
    double crystal_index = 0;
};

EigenmodeSolution solve_eigenmode(const BowtieLayout& layout,
                                  const Constants& k = default_constants());

enum class LayoutParam { DMc, LLong, AlphaFull };

BowtieLayout with_param(BowtieLayout layout, LayoutParam p, double value);

struct StabilityRow {
    double value;
    double stability_x;
    double stability_y;
    bool stable_x;
    bool stable_y;
};

std::vector<StabilityRow> stability_scan_serial(const BowtieLayout& layout, LayoutParam p,
                                                const std::vector<double>& values,
                                                const Constants& k = default_constants());
std::vector<StabilityRow> stability_scan_omp(const BowtieLayout& layout, LayoutParam p,
                                             const std::vector<double>& values,
                                             const Constants& k = default_constants());

struct StabilityWindow {
    double lo;
    double hi;
};

// per-plane window and their overlap inside [lo, hi]; edges bisected to |A+D|/2 = 1
std::optional<StabilityWindow> stability_window(const BowtieLayout& layout, LayoutParam p,
                                                Plane plane, double lo, double hi,
                                                int steps = 2000,
                                                const Constants& k = default_constants());
std::optional<StabilityWindow> overlap_window(const BowtieLayout& layout, LayoutParam p,
                                              double lo, double hi, int steps = 2000,
                                              const Constants& k = default_constants());

struct OptimizeOptions {
    double max_secondary_ellipticity = 1.01;
    double max_stability = 0.1;  // |A+D|/2 bound, both planes
    int max_cycles = 30;
};

struct LayoutOptimum {
    BowtieLayout layout;
    EigenmodeSolution mode;
    FocusResult focus;
    BowtieLayout start;
    int cycles = 0;
};

// astigmatism-compensated point where both planes sit mid-window
BowtieLayout compensated_start(const BowtieLayout& templ, const Constants& k = default_constants());

// free: d_mc, alpha_full. fixed: l_long, r_mirror, crystal.
LayoutOptimum optimize_layout(const BowtieLayout& templ, const OptimizeOptions& opt = {},
                              const Constants& k = default_constants());

enum class FresnelPol { S, P };

double fresnel_reflectance(double n1, double n2, double incidence, FresnelPol pol);
// SH leaving the crystal through the Brewster face, s-polarized
double brewster_sh_reflectance(double n_sh, double incidence);

struct MirrorSubstrate {
    double index = 1.46;
    double thickness = 6.25e-3;
    double r_front = -0.050;  // propagation sign convention
    double r_back = -0.050;
};

struct OutputCorrection {
    std::optional<double> f;  // empty: no correction needed
    Axis axis = Axis::X;
    double distance_from_m1 = 0;  // from the front surface of M1
    double width_at_lens = 0;
};

OutputCorrection output_correction(const BowtieLayout& layout, const EigenmodeSolution& mode,
                                   const MirrorSubstrate& m1 = {},
                                   const Constants& k = default_constants());

} // namespace chi2
