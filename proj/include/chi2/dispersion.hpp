#pragma once

#include "chi2/materials.hpp"
#include "chi2/units.hpp"

namespace chi2 {

enum class Polarization { Ordinary, Extraordinary };

struct RaySpec {
    Polarization polarization = Polarization::Ordinary;
    double theta = 0.0;  // from the optic axis, extraordinary only
};

// Principal-axis index from the Sellmeier table. Checks band and temperature window.
double principal_index(const Material& m, Polarization axis, const SpectralLine& line,
                       double temperature_c);

double refractive_index(const Material& m, const RaySpec& ray, const SpectralLine& line,
                        double temperature_c);

// 1/n^2 = cos^2/n_o^2 + sin^2/n_e^2
double extraordinary_index_at_angle(double n_o, double n_e, double theta);

} // namespace chi2
