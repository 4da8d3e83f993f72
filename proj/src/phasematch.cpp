#include "chi2/phasematch.hpp"

#include "chi2/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace chi2 {

namespace {

// Full-precision bisection of f on [a, b] with f(a), f(b) of opposite sign.
template <class F>
double bisect(F f, double a, double b) {
    auto tol = [](double lo, double hi) { return std::abs(hi - lo) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(lo)); };
    std::uintmax_t iters = 400;
    auto r = boost::math::tools::bisect(f, a, b, tol, iters);
    return 0.5 * (r.first + r.second);
}

} // namespace

void validate(const CrystalSpec& c) {
    if (!(c.length > 0)) throw InvalidParam("crystal length must be positive");
    if (auto* a = std::get_if<AngleCut>(&c.cut)) {
        if (!(a->theta >= 0 && a->theta <= pi / 2)) throw InvalidParam("cut theta outside [0, pi/2]");
    } else {
        auto& p = std::get<PolingCut>(c.cut);
        if (!(p.poling_period > 0)) throw InvalidParam("poling period must be positive");
    }
}

SpectralLine sum_wavelength(const SpectralLine& pump, const SpectralLine& signal) {
    return SpectralLine::from_hz(pump.frequency_hz() + signal.frequency_hz());
}

SpectralLine second_harmonic(const SpectralLine& fund) {
    return SpectralLine::from_m(fund.wavelength_m() / 2.0);
}

double uv_detuning_ghz(const SpectralLine& uv, const SpectralLine& reference) {
    return (uv.frequency_hz() - reference.frequency_hz()) * 1e-9;
}

SpectralLine d1_reference() {
    SpectralLine uv = second_harmonic(SpectralLine::from_nm(626.342));
    return SpectralLine::from_hz(uv.frequency_hz() - 80e9);
}

double type1_phasematch_angle(const Material& m, const SpectralLine& fund, double temperature_c) {
    if (!m.sellmeier_ordinary) throw InvalidParam(m.name + " has no birefringence model");
    SpectralLine sh = second_harmonic(fund);
    double n_fund = principal_index(m, Polarization::Ordinary, fund, temperature_c);
    double n_o_sh = principal_index(m, Polarization::Ordinary, sh, temperature_c);
    double n_e_sh = principal_index(m, Polarization::Extraordinary, sh, temperature_c);
    if (n_e_sh > n_fund || n_o_sh < n_fund) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "no type-I angle at %.6g nm: n_e(SH) = %.6f, n_o(fund) = %.6f",
                      fund.wavelength_nm(), n_e_sh, n_fund);
        throw NoPhaseMatch(buf);
    }
    auto mismatch = [&](double th) { return extraordinary_index_at_angle(n_o_sh, n_e_sh, th) - n_fund; };
    const int n_scan = 200;
    double prev_t = 0.0, prev_f = mismatch(0.0);
    for (int i = 1; i < n_scan; ++i) {
        double t = (pi / 2) * i / (n_scan - 1);
        double f = mismatch(t);
        if (f == 0.0) return t;
        if ((prev_f > 0) != (f > 0)) return bisect(mismatch, prev_t, t);
        prev_t = t;
        prev_f = f;
    }
    throw NoPhaseMatch("no sign change of the index mismatch over [0, pi/2]");
}

double brewster_angle(double n) {
    if (!(n > 0)) throw InvalidParam("index must be positive");
    return std::atan(n);
}

double walkoff_angle(const Material& m, double theta, const SpectralLine& sh, double temperature_c) {
    double n_o = principal_index(m, Polarization::Ordinary, sh, temperature_c);
    double n_e = principal_index(m, Polarization::Extraordinary, sh, temperature_c);
    double n = extraordinary_index_at_angle(n_o, n_e, theta);
    double t = 0.5 * n * n * std::abs(1.0 / (n_e * n_e) - 1.0 / (n_o * n_o)) * std::sin(2 * theta);
    return std::atan(t);
}

double walkoff_parameter_B(double rho, double k1, double length) {
    if (!(rho >= 0 && k1 > 0 && length > 0)) throw InvalidParam("B needs rho >= 0, k1 > 0, length > 0");
    return 0.5 * rho * std::sqrt(k1 * length);
}

double qpm_mismatch(const Material& m, const SpectralLine& pump, const SpectralLine& signal,
                    double temperature_c, double period) {
    if (!(period > 0)) throw InvalidParam("poling period must be positive");
    SpectralLine idler = sum_wavelength(pump, signal);
    RaySpec e{Polarization::Extraordinary, pi / 2};
    auto k = [&](const SpectralLine& l) {
        return 2 * pi * refractive_index(m, e, l, temperature_c) / l.wavelength_m();
    };
    double grating = std::isinf(period) ? 0.0 : 2 * pi / period;
    return k(idler) - k(pump) - k(signal) - grating;
}

double qpm_phasematch_temperature(const Material& m, const SpectralLine& pump,
                                  const SpectralLine& signal, double period) {
    auto dk = [&](double t) { return qpm_mismatch(m, pump, signal, t, period); };
    double t_lo = std::max(20.0, m.temp_min_c), t_hi = std::min(250.0, m.temp_max_c);
    double prev_t = t_lo, prev_f = dk(t_lo);
    for (double t = t_lo + 1.0; t <= t_hi + 1e-9; t += 1.0) {
        double f = dk(t);
        if (f == 0.0) return t;
        if ((prev_f > 0) != (f > 0)) {
            double root = bisect(dk, prev_t, t);
            if (std::abs(dk(root)) >= 1e-3) throw NoRoot("bisection residual above 1e-3 rad/m");
            return root;
        }
        prev_t = t;
        prev_f = f;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "no QPM temperature in [%g, %g] C for period %.6g um", t_lo,
                  t_hi, period * 1e6);
    throw NoRoot(buf);
}

QpmTuningCurve temperature_acceptance(const Material& m, const SpectralLine& pump,
                                      const SpectralLine& signal, double period, double length,
                                      int samples) {
    if (!(length > 0)) throw InvalidParam("length must be positive");
    if (samples < 3) throw InvalidParam("need at least 3 samples");
    double t0 = qpm_phasematch_temperature(m, pump, signal, period);
    auto eff = [&](double t) {
        double x = qpm_mismatch(m, pump, signal, t, period) * length / 2;
        double s = sinc(x);
        return s * s;
    };
    // walk out until below half maximum, then bisect the edge
    auto edge = [&](double dir) {
        double step = 0.01;
        double inner = t0, outer = t0 + dir * step;
        while (eff(outer) > 0.5) {
            inner = outer;
            step *= 2;
            outer = t0 + dir * step;
            if (outer < m.temp_min_c || outer > m.temp_max_c)
                throw NoRoot("half-maximum edge outside temperature window");
        }
        return bisect([&](double t) { return eff(t) - 0.5; }, std::min(inner, outer), std::max(inner, outer));
    };
    double lo = edge(-1.0), hi = edge(+1.0);
    QpmTuningCurve curve;
    curve.peak_temperature_c = t0;
    curve.fwhm_c = hi - lo;
    double span = 2.0 * curve.fwhm_c;
    curve.samples.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double t = t0 + span * (2.0 * i / (samples - 1) - 1.0);
        if (t < m.temp_min_c || t > m.temp_max_c) continue;
        curve.samples.push_back({t, eff(t)});
    }
    return curve;
}

} // namespace chi2
