#include "pdcsim/schmidt.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>
#include <utility>

#include "pdcsim/errors.hpp"

namespace pdcsim {

SchmidtDecomposition::SchmidtDecomposition(Eigen::VectorXd coefficients,
                                           Eigen::MatrixXcd signal_modes,
                                           Eigen::MatrixXcd idler_modes, FrequencyGrid grid,
                                           double truncated_weight)
    : coefficients_(std::move(coefficients)),
      signal_modes_(std::move(signal_modes)),
      idler_modes_(std::move(idler_modes)),
      grid_(std::move(grid)),
      truncated_weight_(truncated_weight) {}

SchmidtDecomposition decompose(const JointSpectralAmplitude& jsa) {
  const double norm = jsa.squared_norm();
  if (std::abs(norm - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "decompose needs a normalized amplitude, got sum |f|^2 dw dw = " << norm;
    throw NotNormalized(msg.str());
  }

  const auto& grid = jsa.grid();
  const double ds = grid.signal_step();
  const double di = grid.idler_step();
  // weight by the cell measure so that sum c_k^2 = sum |f|^2 dws dwi = 1
  const Eigen::MatrixXcd weighted = jsa.amplitude() * std::sqrt(ds * di);

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(weighted, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();  // descending

  const double threshold = 1e-8 * sv[0];
  Eigen::Index kept = 0;
  while (kept < sv.size() && sv[kept] >= threshold) ++kept;
  if (kept == 0) throw NotNormalizable("all Schmidt coefficients vanish");
  const double truncated = sv.tail(sv.size() - kept).squaredNorm();

  // f_ij = sum_k c_k U_ik conj(V_jk) / sqrt(ds di), so the grid-orthonormal
  // modes are phi_k = U_k / sqrt(ds) and psi_k = conj(V_k) / sqrt(di).
  Eigen::VectorXd c = sv.head(kept);
  Eigen::MatrixXcd phi = svd.matrixU().leftCols(kept) / std::sqrt(ds);
  Eigen::MatrixXcd psi = svd.matrixV().leftCols(kept).conjugate() / std::sqrt(di);
  return SchmidtDecomposition(std::move(c), std::move(phi), std::move(psi), grid, truncated);
}

double effective_mode_number(const Eigen::VectorXd& coefficients) {
  const double quartic = coefficients.array().square().square().sum();
  if (!(quartic > 0.0)) throw DomainError("effective mode number of a zero vector");
  return 1.0 / quartic;
}

double effective_mode_number(const SchmidtDecomposition& dec) {
  return effective_mode_number(dec.coefficients());
}

double g2_low_gain(const SchmidtDecomposition& dec) {
  return 1.0 + 1.0 / effective_mode_number(dec);
}

JointSpectralAmplitude reconstruct(const SchmidtDecomposition& dec) {
  const auto& c = dec.coefficients();
  Eigen::MatrixXcd f = dec.signal_modes() * c.asDiagonal() * dec.idler_modes().transpose();
  return JointSpectralAmplitude::unchecked(dec.grid(), std::move(f));
}

std::vector<SweepRow> pump_width_sweep(const PumpEnvelope& pump_template,
                                       const PhasematchingModel& pm,
                                       std::span<const double> pump_fwhms,
                                       Eigen::Index grid_points, double pump_sigma_span) {
  if (pump_fwhms.empty()) throw DomainError("pump width sweep needs at least one width");
  std::vector<SweepRow> rows;
  rows.reserve(pump_fwhms.size());
  for (double fwhm : pump_fwhms) {
    PumpEnvelope pump = pump_template;
    pump.fwhm_wavelength = fwhm;
    try {
      const FrequencyGrid grid = default_grid(pump, pm, grid_points, pump_sigma_span);
      const JointSpectralAmplitude jsa = build_jsa(pump, pm, grid);
      const SchmidtDecomposition dec = decompose(jsa);
      const double K = effective_mode_number(dec);
      rows.push_back({fwhm, K, 1.0 + 1.0 / K, jsi_correlation(jsa)});
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "pump width " << fwhm * 1e9 << " nm: " << e.what();
      throw DomainError(msg.str());
    }
  }
  return rows;
}

}  // namespace pdcsim
