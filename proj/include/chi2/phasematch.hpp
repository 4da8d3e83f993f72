#pragma once

#include "chi2/dispersion.hpp"
#include "chi2/materials.hpp"
#include "chi2/units.hpp"

#include <cmath>
#include <variant>
#include <vector>

namespace chi2 {

struct AngleCut {
    double theta = 0.0;
    double phi = 0.0;
    bool brewster_faces = true;
};

struct PolingCut {
    double poling_period = 0.0;  // m
    double channel_width = 0.0;  // m
};

struct CrystalSpec {
    MaterialId material = MaterialId::BBO;
    double length = 0.0;  // m
    std::variant<AngleCut, PolingCut> cut;
    double temperature_c = 20.0;
};

void validate(const CrystalSpec& c);

struct QpmSample {
    double temperature_c;
    double efficiency;
};

struct QpmTuningCurve {
    std::vector<QpmSample> samples;
    double fwhm_c = 0.0;
    double peak_temperature_c = 0.0;
};

SpectralLine sum_wavelength(const SpectralLine& pump, const SpectralLine& signal);
SpectralLine second_harmonic(const SpectralLine& fund);
double uv_detuning_ghz(const SpectralLine& uv, const SpectralLine& reference);

// D1 reference anchored to "+80 GHz for the doubled 626.342 nm line".
SpectralLine d1_reference();

double type1_phasematch_angle(const Material& m, const SpectralLine& fund,
                              double temperature_c = 20.0);
double brewster_angle(double n);
double walkoff_angle(const Material& m, double theta, const SpectralLine& sh,
                     double temperature_c = 20.0);
double walkoff_parameter_B(double rho, double k1, double length);

double qpm_mismatch(const Material& m, const SpectralLine& pump, const SpectralLine& signal,
                    double temperature_c, double period);
double qpm_phasematch_temperature(const Material& m, const SpectralLine& pump,
                                  const SpectralLine& signal, double period);
QpmTuningCurve temperature_acceptance(const Material& m, const SpectralLine& pump,
                                      const SpectralLine& signal, double period, double length,
                                      int samples = 201);

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

} // namespace chi2
