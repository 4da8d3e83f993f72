#pragma once

#include <complex>
#include <unordered_map>
#include <utility>
#include <vector>

namespace chi2 {

struct QuadOptions {
    double rel_tol = 1e-6;
    unsigned max_depth = 18;
};

// Inner integral of the focusing function for fixed (zeta_x, zeta_y, B), as a
// function of the longitudinal separation u = s - s'. Values are cached per u, so
// re-evaluating h for many sigma only pays for the outer integral.
//
//   h(sigma) = (z/4) Re int_0^2 du exp(i sigma z u) exp(-B^2 zeta_x u^2) I(u)
//   I(u)     = int_{|v| <= 2-u} g((v+u)/2) conj(g((v-u)/2)) dv
//   g(s)     = 1/sqrt((1 + i zeta_x s)(1 + i zeta_y s)),  z = sqrt(zeta_x zeta_y)
class MixingProfile {
public:
    MixingProfile(double zeta_x, double zeta_y, double B, QuadOptions opt = {});

    // Circular Boyd-Kleinman kernel with g(s) = 1/(1 + i xi s).
    static MixingProfile circular(double xi, double B, QuadOptions opt = {});

    double h(double sigma) const;
    std::complex<double> inner(double u) const;

    double zeta_x() const { return zx_; }
    double zeta_y() const { return zy_; }
    double B() const { return b_; }

private:
    std::complex<double> g(double s) const;

    double zx_, zy_, b_;
    bool circular_ = false;
    QuadOptions opt_;
    mutable std::unordered_map<double, std::complex<double>> cache_;
};

struct PeakH {
    double h;
    double sigma;
};

// max over sigma: coarse scan then Brent refinement
PeakH peak_h(const MixingProfile& profile);

// sigma-optimized h over a list of (zeta_x, zeta_y) at one B.
// Serial reference and OpenMP version produce identical results.
std::vector<PeakH> peak_h_grid_serial(const std::vector<std::pair<double, double>>& zetas,
                                      double B, QuadOptions opt = {});
std::vector<PeakH> peak_h_grid_omp(const std::vector<std::pair<double, double>>& zetas,
                                   double B, QuadOptions opt = {});

// midpoint-rule reference on an n x n grid over [-1,1]^2
double riemann_h(double zeta_x, double zeta_y, double sigma, double B, int n);

} // namespace chi2
