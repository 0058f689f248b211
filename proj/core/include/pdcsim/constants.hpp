#ifndef PDCSIM_CONSTANTS_HPP
#define PDCSIM_CONSTANTS_HPP

#include <cmath>
#include <numbers>

namespace pdcsim {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Gaussian intensity FWHM <-> amplitude standard deviation.
// |alpha(nu)|^2 = exp(-nu^2 / (2 sigma^2))  =>  FWHM = sqrt(8 ln 2) sigma
inline constexpr double kFwhmPerSigma = 2.3548200450309493;  // sqrt(8 ln 2)

inline double angular_frequency(double wavelength) {
  return kTwoPi * kSpeedOfLight / wavelength;
}

inline double vacuum_wavelength(double omega) {
  return kTwoPi * kSpeedOfLight / omega;
}

// |d omega / d lambda| at a given wavelength, for converting spectral widths.
inline double omega_per_wavelength(double wavelength) {
  return kTwoPi * kSpeedOfLight / (wavelength * wavelength);
}

}  // namespace pdcsim

#endif
