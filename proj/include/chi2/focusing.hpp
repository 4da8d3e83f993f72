#pragma once

#include "chi2/focusing_kernels.hpp"
#include "chi2/materials.hpp"
#include "chi2/phasematch.hpp"
#include "chi2/units.hpp"

namespace chi2 {

struct FocusConfig {
    double B = 0.0;
    double zeta_x = 1.0;  // walk-off (tangential) axis
    double zeta_y = 1.0;
    double sigma = 0.0;
};

struct FocusResult {
    double h = 0.0;
    FocusConfig config;
    bool zeta_optimized = false;
    bool sigma_optimized = false;
    double conversion_coefficient = 0.0;  // W^-1, zero when not computed
};

// circular Boyd-Kleinman h; requires zeta_x == zeta_y
double bk_h(const FocusConfig& c, QuadOptions opt = {});
double elliptical_h(const FocusConfig& c, QuadOptions opt = {});

// sigma-optimized h at fixed focusing
FocusResult optimize_sigma(const FocusConfig& c, QuadOptions opt = {});

FocusResult bk_optimize(double B, QuadOptions opt = {});
FocusResult elliptical_optimize(double B, QuadOptions opt = {});

// xi = l lambda / (2 pi w^2 n)
double xi_from_waist(double length, const SpectralLine& line, double waist, double n);

struct SfgInputs {
    SpectralLine pump = SpectralLine::from_nm(1051.140);
    SpectralLine signal = SpectralLine::from_nm(1549.850);
    double p_pump_w = 0.0;
    double p_signal_w = 0.0;
    CrystalSpec crystal;
    double w_pump = 0.0;    // m, inside the crystal
    double w_signal = 0.0;  // m, inside the crystal
};

struct SfgPrediction {
    double eta_per_w_m = 0.0;        // P3 / (P1 P2 l)
    double eta_pct_per_w_cm = 0.0;
    double p3_w = 0.0;
    double conversion = 0.0;         // P3 / (P1 + P2)
    double xi_pump = 0.0;
    double xi_signal = 0.0;
    double xi_used = 0.0;            // geometric mean
    double h = 0.0;
    double sigma = 0.0;
    double d_eff_pm_per_v = 0.0;
    bool depletion_warning = false;
};

SfgPrediction sfg_predict(const SfgInputs& in, const Constants& k = default_constants());

// P3 from a measured eta (%/W/cm), crystal length (m) and the two input powers (W)
double sfg_output_from_eta(double eta_pct_per_w_cm, double length, double p1, double p2);

struct ShgPrediction {
    double gamma_per_w = 0.0;  // P_SH = gamma P^2
    double theta = 0.0;
    double zeta_x = 0.0;
    double zeta_y = 0.0;
    double B = 0.0;
    double h = 0.0;
    double sigma = 0.0;
    double d_eff_pm_per_v = 0.0;
};

// Waists are physical in-crystal waists; x is the walk-off plane.
ShgPrediction shg_gamma_predict(const SpectralLine& fund, const CrystalSpec& crystal, double w_x,
                                double w_y, const Constants& k = default_constants());

// B for type-I SHG of `fund` in `crystal` (theta from the cut, or solved when zero)
double walkoff_B_for(const SpectralLine& fund, const CrystalSpec& crystal,
                     const Constants& k = default_constants());

} // namespace chi2
