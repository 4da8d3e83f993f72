#include "chi2/focusing.hpp"

#include "chi2/dispersion.hpp"
#include "chi2/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>

namespace chi2 {

namespace {

template <class F>
std::pair<double, double> brent_max(F f, double lo, double hi, int bits = 24) {
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, lo, hi, bits,
                                                   iters);
    return {r.first, -r.second};
}

const double kLnMin = std::log(1e-3);
const double kLnMax = std::log(1e2);

} // namespace

double bk_h(const FocusConfig& c, QuadOptions opt) {
    if (c.zeta_x != c.zeta_y) throw InvalidParam("bk_h needs zeta_x == zeta_y");
    return MixingProfile::circular(c.zeta_x, c.B, opt).h(c.sigma);
}

double elliptical_h(const FocusConfig& c, QuadOptions opt) {
    return MixingProfile(c.zeta_x, c.zeta_y, c.B, opt).h(c.sigma);
}

FocusResult optimize_sigma(const FocusConfig& c, QuadOptions opt) {
    PeakH p = peak_h(MixingProfile(c.zeta_x, c.zeta_y, c.B, opt));
    FocusResult r;
    r.h = p.h;
    r.config = c;
    r.config.sigma = p.sigma;
    r.sigma_optimized = true;
    return r;
}

FocusResult bk_optimize(double B, QuadOptions opt) {
    if (!(B >= 0)) throw InvalidParam("B must be non-negative");
    const int n = 25;
    const double a = std::log(0.05), b = std::log(20.0), cell = (b - a) / (n - 1);
    int best = 0;
    double best_h = -1;
    for (int i = 0; i < n; ++i) {
        double hv = peak_h(MixingProfile::circular(std::exp(a + cell * i), B, opt)).h;
        if (hv > best_h) {
            best_h = hv;
            best = i;
        }
    }
    double lo = std::max(kLnMin, a + cell * (best - 1)), hi = std::min(kLnMax, a + cell * (best + 1));
    auto [x, hx] = brent_max(
        [&](double lx) { return peak_h(MixingProfile::circular(std::exp(lx), B, opt)).h; }, lo, hi);
    double xi = std::exp(x);
    PeakH p = peak_h(MixingProfile::circular(xi, B, opt));
    FocusResult r;
    r.h = p.h;
    r.config = {B, xi, xi, p.sigma};
    r.zeta_optimized = r.sigma_optimized = true;
    (void)hx;
    return r;
}

FocusResult elliptical_optimize(double B, QuadOptions opt) {
    if (!(B >= 0)) throw InvalidParam("B must be non-negative");
    const int n = 13;
    const double a = std::log(0.02), b = std::log(30.0), cell = (b - a) / (n - 1);
    std::vector<std::pair<double, double>> grid;
    grid.reserve(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) grid.emplace_back(std::exp(a + cell * i), std::exp(a + cell * j));
    auto coarse = peak_h_grid_omp(grid, B, opt);
    std::size_t best = 0;
    for (std::size_t k = 1; k < coarse.size(); ++k)
        if (coarse[k].h > coarse[best].h) best = k;
    double bx = std::log(grid[best].first), by = std::log(grid[best].second);

    auto clip_lo = [](double v) { return std::max(kLnMin, v); };
    auto clip_hi = [](double v) { return std::min(kLnMax, v); };
    double ylo = clip_lo(by - 2 * cell), yhi = clip_hi(by + 2 * cell);
    auto best_over_y = [&](double lx) {
        return brent_max(
            [&](double ly) {
                return peak_h(MixingProfile(std::exp(lx), std::exp(ly), B, opt)).h;
            },
            ylo, yhi, 22);
    };
    auto [x, hx] = brent_max([&](double lx) { return best_over_y(lx).second; },
                             clip_lo(bx - 1.5 * cell), clip_hi(bx + 1.5 * cell), 22);
    double y = best_over_y(x).first;
    double zx = std::exp(x), zy = std::exp(y);
    PeakH p = peak_h(MixingProfile(zx, zy, B, opt));
    FocusResult r;
    r.h = p.h;
    r.config = {B, zx, zy, p.sigma};
    r.zeta_optimized = r.sigma_optimized = true;
    (void)hx;
    return r;
}

double xi_from_waist(double length, const SpectralLine& line, double waist, double n) {
    if (!(length > 0 && waist > 0 && n > 0)) throw InvalidParam("xi needs positive l, w, n");
    return length * line.wavelength_m() / (2 * pi * waist * waist * n);
}

SfgPrediction sfg_predict(const SfgInputs& in, const Constants& k) {
    validate(in.crystal);
    if (!(in.w_pump > 0 && in.w_signal > 0)) throw InvalidParam("waists must be positive");
    if (!(in.p_pump_w >= 0 && in.p_signal_w >= 0)) throw InvalidParam("powers must be >= 0");
    const Material& m = k.material(in.crystal.material);
    const double t = in.crystal.temperature_c, l = in.crystal.length;
    SpectralLine out = sum_wavelength(in.pump, in.signal);
    RaySpec e{Polarization::Extraordinary, pi / 2};
    double n1 = refractive_index(m, e, in.pump, t);
    double n2 = refractive_index(m, e, in.signal, t);
    double n3 = refractive_index(m, e, out, t);
    double k1 = 2 * pi * n1 / in.pump.wavelength_m();
    double k2 = 2 * pi * n2 / in.signal.wavelength_m();

    SfgPrediction p;
    p.xi_pump = xi_from_waist(l, in.pump, in.w_pump, n1);
    p.xi_signal = xi_from_waist(l, in.signal, in.w_signal, n2);
    p.xi_used = std::sqrt(p.xi_pump * p.xi_signal);
    PeakH ph = peak_h(MixingProfile::circular(p.xi_used, 0.0));
    p.h = ph.h;
    p.sigma = ph.sigma;
    p.d_eff_pm_per_v = k.nonlinear.d_qpm_pm_per_v();
    double d = p.d_eff_pm_per_v * 1e-12;
    double w3 = out.angular_frequency();
    p.eta_per_w_m = 4 * d * d * w3 * w3 * p.h * k1 * k2 /
                    (pi * n1 * n2 * n3 * eps0 * std::pow(c_light, 3) * (k1 + k2));
    p.eta_pct_per_w_cm = p.eta_per_w_m;  // 1 /(W m) is numerically 1 %/(W cm)
    p.p3_w = p.eta_per_w_m * l * in.p_pump_w * in.p_signal_w;
    double pin = in.p_pump_w + in.p_signal_w;
    p.conversion = pin > 0 ? p.p3_w / pin : 0.0;
    p.depletion_warning = p.conversion > 0.30;
    return p;
}

double sfg_output_from_eta(double eta_pct_per_w_cm, double length, double p1, double p2) {
    return eta_pct_per_w_cm * 1e-2 * (length * 100.0) * p1 * p2;
}

double walkoff_B_for(const SpectralLine& fund, const CrystalSpec& crystal, const Constants& k) {
    const Material& m = k.material(crystal.material);
    const auto* cut = std::get_if<AngleCut>(&crystal.cut);
    if (!cut) return 0.0;
    double theta = cut->theta > 0 ? cut->theta
                                  : type1_phasematch_angle(m, fund, crystal.temperature_c);
    double rho = walkoff_angle(m, theta, second_harmonic(fund), crystal.temperature_c);
    double n = principal_index(m, Polarization::Ordinary, fund, crystal.temperature_c);
    return walkoff_parameter_B(rho, 2 * pi * n / fund.wavelength_m(), crystal.length);
}

ShgPrediction shg_gamma_predict(const SpectralLine& fund, const CrystalSpec& crystal, double w_x,
                                double w_y, const Constants& k) {
    validate(crystal);
    const auto* cut = std::get_if<AngleCut>(&crystal.cut);
    if (!cut) throw InvalidParam("SHG prediction needs an angle-cut crystal");
    if (!(w_x > 0 && w_y > 0)) throw InvalidParam("waists must be positive");
    const Material& m = k.material(crystal.material);
    const double t = crystal.temperature_c, l = crystal.length;
    ShgPrediction s;
    s.theta = cut->theta > 0 ? cut->theta : type1_phasematch_angle(m, fund, t);
    SpectralLine sh = second_harmonic(fund);
    double n = principal_index(m, Polarization::Ordinary, fund, t);
    double n2 = refractive_index(m, {Polarization::Extraordinary, s.theta}, sh, t);
    s.zeta_x = xi_from_waist(l, fund, w_x, n);
    s.zeta_y = xi_from_waist(l, fund, w_y, n);
    double rho = walkoff_angle(m, s.theta, sh, t);
    s.B = walkoff_parameter_B(rho, 2 * pi * n / fund.wavelength_m(), l);
    PeakH ph = peak_h(MixingProfile(s.zeta_x, s.zeta_y, s.B));
    s.h = ph.h;
    s.sigma = ph.sigma;
    s.d_eff_pm_per_v = k.nonlinear.d_eff_bbo_pm_per_v(s.theta);
    double d = s.d_eff_pm_per_v * 1e-12;
    double lam = fund.wavelength_m();
    s.gamma_per_w = 16 * pi * pi * d * d * l * s.h / (eps0 * c_light * lam * lam * lam * n * n2);
    return s;
}

} // namespace chi2
