#include "pdcsim/jsa.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <utility>

#include "pdcsim/constants.hpp"
#include "pdcsim/errors.hpp"

namespace pdcsim {

namespace {

// sinc(x) = sin(x)/x with the removable singularity filled in.
double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace

double PumpEnvelope::central_omega() const { return angular_frequency(central_wavelength); }

double PumpEnvelope::sigma_omega() const {
  const double fwhm_omega = omega_per_wavelength(central_wavelength) * fwhm_wavelength;
  return fwhm_omega / kFwhmPerSigma;
}

void PumpEnvelope::validate() const {
  if (!(central_wavelength > 0.0)) throw DomainError("pump central wavelength must be > 0");
  if (!(fwhm_wavelength > 0.0)) throw DomainError("pump FWHM must be > 0");
  if (!std::isfinite(chirp)) throw DomainError("pump chirp must be finite");
}

double PhasematchingModel::signal_central_omega() const {
  return angular_frequency(signal_central_wavelength);
}

double PhasematchingModel::idler_central_omega() const {
  return angular_frequency(idler_central_wavelength);
}

void PhasematchingModel::validate() const {
  if (!(effective_length > 0.0)) throw DomainError("effective length must be > 0");
  if (!(signal_central_wavelength > 0.0) || !(idler_central_wavelength > 0.0)) {
    throw DomainError("central wavelengths must be > 0");
  }
  if (!std::isfinite(kappa_signal) || !std::isfinite(kappa_idler)) {
    throw DomainError("kappa coefficients must be finite");
  }
}

std::complex<double> pump_amplitude(const PumpEnvelope& pump, double omega_sum) {
  const double nu = omega_sum - pump.central_omega();
  const double sigma = pump.sigma_omega();
  const double envelope = std::exp(-nu * nu / (4.0 * sigma * sigma));
  if (pump.chirp == 0.0) return {envelope, 0.0};
  const double phase = pump.chirp * nu * nu;
  return std::polar(envelope, phase);
}

std::complex<double> phasematching_amplitude(const PhasematchingModel& pm,
                                             double nu_signal, double nu_idler) {
  const double dk = pm.kappa_signal * nu_signal + pm.kappa_idler * nu_idler;
  const double x = 0.5 * dk * pm.effective_length;
  switch (pm.shape) {
    case PhasematchShape::kSinc:
      return sinc(x) * std::polar(1.0, x);
    case PhasematchShape::kGaussianApprox:
      return {std::exp(-kSincGaussianGamma * x * x), 0.0};
  }
  throw DomainError("unknown phasematching shape");
}

JointSpectralAmplitude::JointSpectralAmplitude(Unchecked, FrequencyGrid grid,
                                               Eigen::MatrixXcd amplitude)
    : grid_(std::move(grid)), amplitude_(std::move(amplitude)) {
  if (amplitude_.rows() != grid_.signal_points() || amplitude_.cols() != grid_.idler_points()) {
    throw DomainError("amplitude matrix does not match the grid shape");
  }
}

JointSpectralAmplitude::JointSpectralAmplitude(FrequencyGrid grid, Eigen::MatrixXcd amplitude)
    : JointSpectralAmplitude(Unchecked{}, std::move(grid), std::move(amplitude)) {
  const double n = squared_norm();
  if (std::abs(n - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "joint amplitude is not L2-normalized: sum |f|^2 dw dw = " << n;
    throw NotNormalized(msg.str());
  }
}

JointSpectralAmplitude JointSpectralAmplitude::unchecked(FrequencyGrid grid,
                                                         Eigen::MatrixXcd amplitude) {
  return JointSpectralAmplitude(Unchecked{}, std::move(grid), std::move(amplitude));
}

double JointSpectralAmplitude::squared_norm() const {
  return amplitude_.squaredNorm() * grid_.cell_measure();
}

FrequencyGrid default_grid(const PumpEnvelope& pump, const PhasematchingModel& pm,
                           Eigen::Index points_per_axis, double pump_sigma_span) {
  pump.validate();
  pm.validate();
  const double sigma = pump.sigma_omega();
  const double pump_half = pump_sigma_span * sigma;
  // second sinc zero along each axis: |kappa| nu L / 2 = 2 pi
  auto second_zero = [&](double kappa) {
    return kappa == 0.0 ? 0.0 : 4.0 * std::numbers::pi / (pm.effective_length * std::abs(kappa));
  };
  const double half_s = std::max(pump_half, second_zero(pm.kappa_signal));
  const double half_i = std::max(pump_half, second_zero(pm.kappa_idler));
  return FrequencyGrid::centered(pm.signal_central_omega(), pm.idler_central_omega(),
                                 half_s, half_i, points_per_axis);
}

JointSpectralAmplitude build_jsa(const PumpEnvelope& pump, const PhasematchingModel& pm,
                                 const FrequencyGrid& grid) {
  pump.validate();
  pm.validate();
  if (grid.signal_points() < 16 || grid.idler_points() < 16) {
    throw GridTooCoarse("JSA construction needs at least 16 points per axis");
  }
  const double omega_p = pump.central_omega();
  const double omega_s0 = pm.signal_central_omega();
  const double omega_i0 = pm.idler_central_omega();
  if (std::abs(omega_p - omega_s0 - omega_i0) / omega_p >= 1e-3) {
    throw DomainError("pump and signal/idler central frequencies violate energy conservation");
  }

  const auto& ws = grid.signal();
  const auto& wi = grid.idler();
  Eigen::MatrixXcd f(grid.signal_points(), grid.idler_points());
  for (Eigen::Index i = 0; i < ws.size(); ++i) {
    const double nu_s = ws[i] - omega_s0;
    for (Eigen::Index j = 0; j < wi.size(); ++j) {
      const double nu_i = wi[j] - omega_i0;
      f(i, j) = pump_amplitude(pump, ws[i] + wi[j]) * phasematching_amplitude(pm, nu_s, nu_i);
    }
  }

  const double norm_sq = f.squaredNorm() * grid.cell_measure();
  if (!(norm_sq > 0.0)) {
    throw NotNormalizable("joint amplitude vanishes on the whole grid");
  }
  f /= std::sqrt(norm_sq);
  return JointSpectralAmplitude(grid, std::move(f));
}

std::vector<std::string> coverage_warnings(const PumpEnvelope& pump,
                                           const PhasematchingModel& pm,
                                           const FrequencyGrid& grid) {
  std::vector<std::string> warnings;
  const double sigma = pump.sigma_omega();
  const double half_s = 0.5 * (grid.signal()[grid.signal_points() - 1] - grid.signal()[0]);
  const double half_i = 0.5 * (grid.idler()[grid.idler_points() - 1] - grid.idler()[0]);
  if (half_s < 3.0 * sigma || half_i < 3.0 * sigma) {
    warnings.push_back("grid covers less than +-3 pump sigma");
  }
  auto check_zeros = [&](double kappa, double half, const char* arm) {
    if (kappa == 0.0) return;
    const double second_zero = 4.0 * std::numbers::pi / (pm.effective_length * std::abs(kappa));
    if (half < second_zero) {
      warnings.push_back(std::string("grid misses the first two sinc zeros on the ") + arm +
                         " axis");
    }
  };
  check_zeros(pm.kappa_signal, half_s, "signal");
  check_zeros(pm.kappa_idler, half_i, "idler");
  return warnings;
}

Eigen::MatrixXd joint_spectral_intensity(const JointSpectralAmplitude& jsa) {
  return jsa.amplitude().cwiseAbs2();
}

Eigen::VectorXd marginal_spectrum(const JointSpectralAmplitude& jsa, Arm arm) {
  const Eigen::MatrixXd jsi = joint_spectral_intensity(jsa);
  Eigen::VectorXd m = (arm == Arm::kSignal) ? jsi.rowwise().sum() : jsi.colwise().sum().transpose();
  const double total = m.sum();
  if (total > 0.0) m /= total;
  return m;
}

double jsi_correlation(const JointSpectralAmplitude& jsa) {
  const Eigen::MatrixXd jsi = joint_spectral_intensity(jsa);
  const double total = jsi.sum();
  if (!(total > 0.0)) return 0.0;
  const Eigen::VectorXd ps = jsi.rowwise().sum() / total;
  const Eigen::VectorXd pi = jsi.colwise().sum().transpose() / total;
  const auto& ws = jsa.grid().signal();
  const auto& wi = jsa.grid().idler();
  const double mean_s = ps.dot(ws);
  const double mean_i = pi.dot(wi);
  const double var_s = ps.dot((ws.array() - mean_s).square().matrix());
  const double var_i = pi.dot((wi.array() - mean_i).square().matrix());
  if (!(var_s > 0.0) || !(var_i > 0.0)) return 0.0;
  const double cov =
      ((ws.array() - mean_s).matrix().transpose() * (jsi / total) * (wi.array() - mean_i).matrix())
          .value();
  return cov / std::sqrt(var_s * var_i);
}

}  // namespace pdcsim
