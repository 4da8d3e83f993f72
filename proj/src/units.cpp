#include "chi2/units.hpp"

#include "chi2/errors.hpp"

#include <cmath>

namespace chi2 {

SpectralLine SpectralLine::from_m(double m) {
    if (!(m > 0) || !std::isfinite(m)) throw InvalidParam("wavelength must be positive");
    return SpectralLine(m, c_light / m);
}

SpectralLine SpectralLine::from_hz(double hz) {
    if (!(hz > 0) || !std::isfinite(hz)) throw InvalidParam("frequency must be positive");
    return SpectralLine(c_light / hz, hz);
}

} // namespace chi2
