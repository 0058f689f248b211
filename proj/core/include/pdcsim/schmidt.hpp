#ifndef PDCSIM_SCHMIDT_HPP
#define PDCSIM_SCHMIDT_HPP

#include <Eigen/Core>
#include <span>
#include <vector>

#include "pdcsim/jsa.hpp"

namespace pdcsim {

// Broadband-mode factorization f(w1,w2) = sum_k c_k phi_k(w1) psi_k(w2).
// Coefficients are sorted descending with sum c_k^2 = 1; the mode columns are
// orthonormal under the grid measure (<phi_j, phi_k> dw = delta_jk).
class SchmidtDecomposition {
 public:
  SchmidtDecomposition(Eigen::VectorXd coefficients, Eigen::MatrixXcd signal_modes,
                       Eigen::MatrixXcd idler_modes, FrequencyGrid grid,
                       double truncated_weight);

  const Eigen::VectorXd& coefficients() const { return coefficients_; }
  // column k holds phi_k sampled on the signal axis
  const Eigen::MatrixXcd& signal_modes() const { return signal_modes_; }
  const Eigen::MatrixXcd& idler_modes() const { return idler_modes_; }
  const FrequencyGrid& grid() const { return grid_; }
  // sum of c_k^2 dropped by truncation
  double truncated_weight() const { return truncated_weight_; }

 private:
  Eigen::VectorXd coefficients_;
  Eigen::MatrixXcd signal_modes_;
  Eigen::MatrixXcd idler_modes_;
  FrequencyGrid grid_;
  double truncated_weight_;
};

// Singular value decomposition of the grid-measure-weighted amplitude.
// Singular values are scaled by sqrt(dws dwi) so the discrete c_k approximate
// the continuum Schmidt coefficients; modes below 1e-8 c_0 are dropped.
SchmidtDecomposition decompose(const JointSpectralAmplitude& jsa);

// K = 1 / sum c_k^4
double effective_mode_number(const Eigen::VectorXd& coefficients);
double effective_mode_number(const SchmidtDecomposition& dec);

// Low-gain second-order correlation g2 = 1 + 1/K.
double g2_low_gain(const SchmidtDecomposition& dec);

JointSpectralAmplitude reconstruct(const SchmidtDecomposition& dec);

struct SweepRow {
  double pump_fwhm;         // m
  double mode_number;       // K
  double g2_low_gain;
  double jsi_correlation;
};

// One row per pump width: rebuilds the default grid and JSA for each width
// and reports K, the low-gain g2 and the JSI correlation.
std::vector<SweepRow> pump_width_sweep(const PumpEnvelope& pump_template,
                                       const PhasematchingModel& pm,
                                       std::span<const double> pump_fwhms,
                                       Eigen::Index grid_points = 256,
                                       double pump_sigma_span = 4.0);

}  // namespace pdcsim

#endif
