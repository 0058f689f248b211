#ifndef PDCSIM_JSA_HPP
#define PDCSIM_JSA_HPP

#include <Eigen/Core>
#include <complex>
#include <string>
#include <vector>

#include "pdcsim/grid.hpp"

namespace pdcsim {

// Gaussian spectral amplitude of the filtered pump pulse.
struct PumpEnvelope {
  double central_wavelength = 0.0;  // m
  double fwhm_wavelength = 0.0;     // m, intensity FWHM
  double chirp = 0.0;               // quadratic spectral phase, rad s^2

  double central_omega() const;  // 2 pi c / lambda_p
  // Amplitude std deviation in angular frequency. The intensity FWHM in
  // wavelength converts through |d omega / d lambda| at the pump center.
  double sigma_omega() const;
  void validate() const;
};

enum class PhasematchShape {
  kSinc,            // sinc(dk L/2) exp(i dk L/2): analytic amplitude of a uniform medium
  kGaussianApprox,  // exp(-0.193 (dk L/2)^2): width-matched Gaussian, no phase
};

// Linearized momentum mismatch dk = kappa_s nu_s + kappa_i nu_i around the
// central frequencies; the kappas are inverse group-velocity mismatches
// k_p' - k_s' and k_p' - k_i'.
struct PhasematchingModel {
  double effective_length = 0.0;          // m
  double kappa_signal = 0.0;              // s/m
  double kappa_idler = 0.0;               // s/m
  double signal_central_wavelength = 0.0; // m
  double idler_central_wavelength = 0.0;  // m
  PhasematchShape shape = PhasematchShape::kSinc;

  double signal_central_omega() const;
  double idler_central_omega() const;
  void validate() const;
};

// Width parameter of the Gaussian fit exp(-gamma x^2) to sinc^2(x).
inline constexpr double kSincGaussianGamma = 0.193;

std::complex<double> pump_amplitude(const PumpEnvelope& pump, double omega_sum);
std::complex<double> phasematching_amplitude(const PhasematchingModel& pm,
                                             double nu_signal, double nu_idler);

// L2-normalized joint spectral amplitude f(omega_s, omega_i) on a grid;
// rows index the signal axis, columns the idler axis.
class JointSpectralAmplitude {
 public:
  // Validates the unit-norm invariant (sum |f|^2 dws dwi = 1).
  JointSpectralAmplitude(FrequencyGrid grid, Eigen::MatrixXcd amplitude);

  // Skips the norm check; for reconstruction paths and tests.
  static JointSpectralAmplitude unchecked(FrequencyGrid grid, Eigen::MatrixXcd amplitude);

  const FrequencyGrid& grid() const { return grid_; }
  const Eigen::MatrixXcd& amplitude() const { return amplitude_; }
  double squared_norm() const;

 private:
  struct Unchecked {};
  JointSpectralAmplitude(Unchecked, FrequencyGrid grid, Eigen::MatrixXcd amplitude);

  FrequencyGrid grid_;
  Eigen::MatrixXcd amplitude_;
};

// Default analysis grid: centered on the phasematching wavelengths, spanning
// the larger of +-`pump_sigma_span` pump sigma and the first two sinc zeros
// on each axis.
FrequencyGrid default_grid(const PumpEnvelope& pump, const PhasematchingModel& pm,
                           Eigen::Index points_per_axis = 256,
                           double pump_sigma_span = 4.0);

JointSpectralAmplitude build_jsa(const PumpEnvelope& pump, const PhasematchingModel& pm,
                                 const FrequencyGrid& grid);

// Human-readable warnings when the grid undercovers the pump (+-3 sigma) or
// the first two sinc zeros; empty when coverage is adequate.
std::vector<std::string> coverage_warnings(const PumpEnvelope& pump,
                                           const PhasematchingModel& pm,
                                           const FrequencyGrid& grid);

// |f|^2 elementwise. Entries are spectral densities: they sum to
// 1 / (dws dwi), so that sum * cell_measure = 1.
Eigen::MatrixXd joint_spectral_intensity(const JointSpectralAmplitude& jsa);

enum class Arm { kSignal, kIdler };

// Per-point probability mass of one arm (sums to 1).
Eigen::VectorXd marginal_spectrum(const JointSpectralAmplitude& jsa, Arm arm);

// Pearson correlation of (omega_s, omega_i) under the JSI probability mass.
double jsi_correlation(const JointSpectralAmplitude& jsa);

}  // namespace pdcsim

#endif
