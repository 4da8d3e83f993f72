#pragma once

namespace chi2 {

struct BuildupSolution {
    double p_in = 0;
    double p_circ = 0;
    double p_sh_internal = 0;
    double p_sh_main = 0;  // after the Brewster-surface split
    double conversion_main = 0;
    double conversion_total = 0;
    double impedance_residual = 0;  // T1 - (L + gamma P_circ)
    double fixed_point_residual = 0;  // |T1 P_in - P_circ (1 - sqrt(...))^2|, W
    int iterations = 0;
};

struct BuildupParams {
    double t1 = 0.016;
    double l_passive = 0.0;
    double gamma = 0.0;        // W^-1, single pass P_SH = gamma P^2
    double r_brewster = 0.16;  // SH fraction leaving through the Brewster face
};

// P_c = T1 P_in / (1 - sqrt((1-T1)(1-L)(1-gamma P_c)))^2
BuildupSolution buildup_solve(double p_in, const BuildupParams& p);

// T1 = L + gamma P_circ(T1) at the design input power
double impedance_match_T1(double l_passive, double gamma, double p_in_design);

struct BuildupObservations {
    double t1 = 0.016;
    double conversion_main = 0.42;
    double r_brewster = 0.16;
    double p_in_match = 1.0;   // W, impedance matched here
    double p_in_ref = 1.8;     // W, operating point of the quoted conversion
};

struct BuildupCalibration {
    double l_passive = 0;
    double gamma = 0;
    double conversion_total = 0;
};

BuildupCalibration calibrate_buildup(const BuildupObservations& obs = {});

// d ln P_sh / d ln P_in by a symmetric 1 % difference
double buildup_log_slope(double p_in, const BuildupParams& p);

} // namespace chi2
