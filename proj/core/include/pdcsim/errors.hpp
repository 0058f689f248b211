#ifndef PDCSIM_ERRORS_HPP
#define PDCSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pdcsim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Frequency grid has too few points for spectral analysis.
struct GridTooCoarse : Error {
  using Error::Error;
};

// Joint amplitude is identically zero and cannot be L2-normalized.
struct NotNormalizable : Error {
  using Error::Error;
};

// Input amplitude violates the unit-L2-norm invariant.
struct NotNormalized : Error {
  using Error::Error;
};

// Photon-number distribution cutoff leaves more than the allowed tail mass.
struct CutoffTooSmall : Error {
  CutoffTooSmall(const std::string& msg, int required)
      : Error(msg), required_cutoff(required) {}
  int required_cutoff;
};

// g2 of the vacuum state is undefined.
struct ZeroGain : Error {
  using Error::Error;
};

// Background subtraction produced negative signal probabilities.
struct NegativeCorrected : Error {
  using Error::Error;
};

// Too many spectrometer events land outside the histogram time window.
struct WindowOverflow : Error {
  using Error::Error;
};

// Matrices passed to similarity() have different shapes.
struct ShapeMismatch : Error {
  using Error::Error;
};

// Invalid parameter outside the supported domain.
struct DomainError : Error {
  using Error::Error;
};

// Configuration file or override is malformed or inconsistent.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace pdcsim

#endif
