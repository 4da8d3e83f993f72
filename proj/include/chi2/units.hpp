#pragma once

#include <numbers>

namespace chi2 {

inline constexpr double pi = std::numbers::pi;
inline constexpr double c_light = 299792458.0;       // m/s
inline constexpr double eps0 = 8.8541878128e-12;     // F/m

constexpr double deg2rad(double deg) { return deg * pi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / pi; }

// Vacuum wavelength and frequency kept together. Meters internally, nm for display.
class SpectralLine {
public:
    static SpectralLine from_nm(double nm) { return from_m(nm * 1e-9); }
    static SpectralLine from_m(double m);
    static SpectralLine from_hz(double hz);

    double wavelength_m() const { return lambda_m_; }
    double wavelength_nm() const { return lambda_m_ * 1e9; }
    double wavelength_um() const { return lambda_m_ * 1e6; }
    double frequency_hz() const { return nu_hz_; }
    double frequency_thz() const { return nu_hz_ * 1e-12; }
    double angular_frequency() const { return 2.0 * pi * nu_hz_; }

private:
    SpectralLine(double lambda_m, double nu_hz) : lambda_m_(lambda_m), nu_hz_(nu_hz) {}
    double lambda_m_;
    double nu_hz_;
};

} // namespace chi2
