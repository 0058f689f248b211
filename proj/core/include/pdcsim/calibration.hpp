#ifndef PDCSIM_CALIBRATION_HPP
#define PDCSIM_CALIBRATION_HPP

#include <Eigen/Core>

#include "pdcsim/jsa.hpp"

namespace pdcsim {

// Targets for solving the two inverse-GVM coefficients of the source model.
struct CalibrationTargets {
  double optimal_pump_fwhm = 1.95e-9;   // m; where K must be minimal
  double first_zero_offset = 8.4e-9;    // m; first sinc zero on the signal axis
  double sweep_lo = 0.5e-9;             // m; pump-width search interval
  double sweep_hi = 4.5e-9;
  Eigen::Index grid_points = 128;       // grid used during the search
  double tolerance = 1e-12;             // m; on the optimum location
};

struct CalibrationResult {
  double kappa_signal = 0.0;  // s/m
  double kappa_idler = 0.0;   // s/m
  double achieved_optimum = 0.0;  // m; argmin of K over pump width
  int evaluations = 0;            // JSA + SVD evaluations spent
};

// Where K(pump width) is minimal for the given kappas, by golden-section
// search over [sweep_lo, sweep_hi].
double optimal_pump_fwhm(const PumpEnvelope& pump_template, const PhasematchingModel& pm,
                         const CalibrationTargets& targets, int* evaluations = nullptr);

// Solves kappa_signal and kappa_idler so that (a) the first sinc zero on the
// signal axis sits `first_zero_offset` from the center and (b) K over pump
// width is minimal at `optimal_pump_fwhm`. The scale fixes kappa_signal
// directly; the ratio kappa_idler/kappa_signal starts from the Gaussian
// separability condition kappa_s kappa_i = -1/(gamma L^2 sigma^2) and is
// refined by a 1-D root solve on the achieved optimum.
CalibrationResult calibrate_kappas(const PumpEnvelope& pump_template,
                                   PhasematchingModel pm_template,
                                   const CalibrationTargets& targets);

}  // namespace pdcsim

#endif
