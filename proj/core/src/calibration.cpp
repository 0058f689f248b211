#include "pdcsim/calibration.hpp"

#include <cmath>

#include "pdcsim/constants.hpp"
#include "pdcsim/errors.hpp"
#include "pdcsim/schmidt.hpp"

namespace pdcsim {

namespace {

double mode_number_at(const PumpEnvelope& pump_template, const PhasematchingModel& pm,
                      double fwhm, Eigen::Index points, int* evaluations) {
  PumpEnvelope pump = pump_template;
  pump.fwhm_wavelength = fwhm;
  const FrequencyGrid grid = default_grid(pump, pm, points);
  const JointSpectralAmplitude jsa = build_jsa(pump, pm, grid);
  if (evaluations) ++*evaluations;
  return effective_mode_number(decompose(jsa));
}

}  // namespace

double optimal_pump_fwhm(const PumpEnvelope& pump_template, const PhasematchingModel& pm,
                         const CalibrationTargets& targets, int* evaluations) {
  double a = targets.sweep_lo;
  double b = targets.sweep_hi;
  if (!(a > 0.0) || !(b > a)) throw DomainError("invalid pump-width search interval");
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = mode_number_at(pump_template, pm, x1, targets.grid_points, evaluations);
  double f2 = mode_number_at(pump_template, pm, x2, targets.grid_points, evaluations);
  while (b - a > targets.tolerance) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = mode_number_at(pump_template, pm, x1, targets.grid_points, evaluations);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = mode_number_at(pump_template, pm, x2, targets.grid_points, evaluations);
    }
  }
  return 0.5 * (a + b);
}

CalibrationResult calibrate_kappas(const PumpEnvelope& pump_template,
                                   PhasematchingModel pm_template,
                                   const CalibrationTargets& targets) {
  pump_template.validate();
  if (!(targets.first_zero_offset > 0.0)) throw DomainError("first-zero target must be > 0");
  if (!(targets.optimal_pump_fwhm > targets.sweep_lo) ||
      !(targets.optimal_pump_fwhm < targets.sweep_hi)) {
    throw DomainError("target optimum must sit inside the search interval");
  }

  const double L = pm_template.effective_length;
  const double lambda_s = pm_template.signal_central_wavelength;
  // first sinc zero: |kappa_s| nu L / 2 = pi, with nu = (2 pi c / lambda^2) dlambda
  const double nu_zero = omega_per_wavelength(lambda_s) * targets.first_zero_offset;
  const double kappa_s = kTwoPi / (L * nu_zero);

  // Gaussian-matched separability at the target width fixes the product:
  // 1/(4 sigma^2) = gamma (L/2)^2 |kappa_s kappa_i|  with opposite signs
  PumpEnvelope pump = pump_template;
  pump.fwhm_wavelength = targets.optimal_pump_fwhm;
  const double sigma = pump.sigma_omega();
  const double product = -1.0 / (kSincGaussianGamma * L * L * sigma * sigma);
  const double ratio0 = product / (kappa_s * kappa_s);

  CalibrationResult result;
  result.kappa_signal = kappa_s;

  PhasematchingModel pm = pm_template;
  pm.kappa_signal = kappa_s;

  auto optimum_for = [&](double ratio) {
    pm.kappa_idler = ratio * kappa_s;
    CalibrationTargets inner = targets;
    inner.tolerance = std::min(1e-4 * targets.optimal_pump_fwhm, 1e-13);
    return optimal_pump_fwhm(pump_template, pm, inner, &result.evaluations);
  };

  const double location_tol = 1e-4 * targets.optimal_pump_fwhm;

  // The Gaussian-model ratio is exact for the gaussian-approx shape and a
  // good starting point for sinc.
  result.achieved_optimum = optimum_for(ratio0);
  if (std::abs(result.achieved_optimum - targets.optimal_pump_fwhm) < location_tol) {
    result.kappa_idler = ratio0 * kappa_s;
    return result;
  }

  // The achieved optimum decreases monotonically as |ratio| grows; bracket
  // around the Gaussian-model value and bisect on the exact shape.
  double lo = ratio0 * 0.5;   // weaker coupling -> optimum above target
  double hi = ratio0 * 2.0;   // stronger -> below
  double f_lo = optimum_for(lo);
  double f_hi = optimum_for(hi);
  int widen = 0;
  while (f_lo < targets.optimal_pump_fwhm && widen++ < 8) {
    lo *= 0.5;
    f_lo = optimum_for(lo);
  }
  while (f_hi > targets.optimal_pump_fwhm && widen++ < 16) {
    hi *= 2.0;
    f_hi = optimum_for(hi);
  }
  if (f_lo < targets.optimal_pump_fwhm || f_hi > targets.optimal_pump_fwhm) {
    throw DomainError("calibration failed to bracket the target optimum");
  }

  double ratio = ratio0;
  for (int it = 0; it < 60; ++it) {
    ratio = 0.5 * (lo + hi);
    const double achieved = optimum_for(ratio);
    result.achieved_optimum = achieved;
    if (std::abs(achieved - targets.optimal_pump_fwhm) < location_tol) break;
    if (achieved > targets.optimal_pump_fwhm) {
      lo = ratio;
    } else {
      hi = ratio;
    }
  }

  result.kappa_idler = ratio * kappa_s;
  return result;
}

}  // namespace pdcsim
