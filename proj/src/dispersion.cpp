#include "chi2/dispersion.hpp"

#include "chi2/errors.hpp"

#include <cmath>
#include <cstdio>

namespace chi2 {

namespace {

double eval_n2(const EimerlTerms& t, double l_um, double) {
    double l2 = l_um * l_um;
    return t.a + t.b / (l2 - t.c) - t.d * l2;
}

double eval_n2(const JundtTerms& t, double l_um, double temp_c) {
    double f = (temp_c - t.t_ref_c) * (temp_c + t.t_offset_c);
    double l2 = l_um * l_um;
    double pole1 = t.a3 + t.b3 * f;
    return t.a1 + t.b1 * f + (t.a2 + t.b2 * f) / (l2 - pole1 * pole1) +
           (t.a4 + t.b4 * f) / (l2 - t.a5 * t.a5) - t.a6 * l2;
}

void check_window(const Material& m, const SpectralLine& line, double temperature_c) {
    double nm = line.wavelength_nm();
    if (!(nm >= m.band_min_nm && nm <= m.band_max_nm)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "wavelength %.6g nm outside %s band [%g, %g] nm", nm,
                      m.name.c_str(), m.band_min_nm, m.band_max_nm);
        throw OutOfBand(buf);
    }
    if (!(temperature_c >= m.temp_min_c && temperature_c <= m.temp_max_c)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "temperature %.6g C outside %s window [%g, %g] C",
                      temperature_c, m.name.c_str(), m.temp_min_c, m.temp_max_c);
        throw OutOfBand(buf);
    }
}

} // namespace

double principal_index(const Material& m, Polarization axis, const SpectralLine& line,
                       double temperature_c) {
    check_window(m, line, temperature_c);
    const SellmeierTerms* terms = nullptr;
    if (axis == Polarization::Ordinary) {
        if (!m.sellmeier_ordinary)
            throw InvalidParam("ordinary index not modeled for " + m.name);
        terms = &*m.sellmeier_ordinary;
    } else {
        terms = &m.sellmeier_extraordinary;
    }
    double l_um = line.wavelength_um();
    double n2 = std::visit([&](const auto& t) { return eval_n2(t, l_um, temperature_c); }, *terms);
    if (!(n2 > 1.0)) throw NonPhysical("Sellmeier gives n^2 <= 1 for " + m.name);
    return std::sqrt(n2);
}

double extraordinary_index_at_angle(double n_o, double n_e, double theta) {
    if (!(n_o > 1.0 && n_e > 1.0)) throw InvalidParam("indices must exceed 1");
    if (!(theta >= 0.0 && theta <= pi / 2)) throw InvalidParam("theta outside [0, pi/2]");
    double c = std::cos(theta), s = std::sin(theta);
    return 1.0 / std::sqrt(c * c / (n_o * n_o) + s * s / (n_e * n_e));
}

double refractive_index(const Material& m, const RaySpec& ray, const SpectralLine& line,
                        double temperature_c) {
    if (ray.polarization == Polarization::Ordinary)
        return principal_index(m, Polarization::Ordinary, line, temperature_c);
    if (!(ray.theta >= 0.0 && ray.theta <= pi / 2)) throw InvalidParam("theta outside [0, pi/2]");
    double n_e = principal_index(m, Polarization::Extraordinary, line, temperature_c);
    // along a principal axis the ordinary index drops out
    if (ray.theta == pi / 2) return n_e;
    double n_o = principal_index(m, Polarization::Ordinary, line, temperature_c);
    return extraordinary_index_at_angle(n_o, n_e, ray.theta);
}

} // namespace chi2
