#ifndef PDCSIM_SQUEEZER_HPP
#define PDCSIM_SQUEEZER_HPP

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "pdcsim/rng.hpp"

namespace pdcsim {

// Multimode squeezed vacuum: independent two-mode squeezers with per-mode
// squeezing r_k = B c_k where B absorbs the coupling strength and scales
// with the square root of pump power. Each mode emits photon-number
// correlated thermal beams with mean sinh^2(r_k).
class SqueezerState {
 public:
  SqueezerState(Eigen::VectorXd coefficients, double gain);

  const Eigen::VectorXd& coefficients() const { return coefficients_; }
  double gain() const { return gain_; }
  Eigen::VectorXd mode_squeezing() const { return gain_ * coefficients_; }
  Eigen::VectorXd mode_mean_photons() const;  // sinh^2(B c_k)

 private:
  Eigen::VectorXd coefficients_;
  double gain_;
};

// Total mean photon number per arm, sum_k sinh^2(B c_k).
double mean_photon_number(const SqueezerState& state);

// Single-mode interpretation r = asinh(sqrt(n)); dB = 20 r log10(e), i.e.
// -10 log10 of the squeezed two-mode quadrature variance e^(-2r).
double mean_photon_to_squeezing_db(double mean_photons);

// g2 = 1 + sum n_k^2 / (sum n_k)^2 for independent thermal modes; reduces to
// 1 + 1/K as the gain goes to zero. Throws ZeroGain at B = 0.
double g2_analytic(const SqueezerState& state);

// Distribution of the total per-arm photon number: convolution of the
// per-mode geometric laws, truncated at `cutoff` total photons. Throws
// CutoffTooSmall when the per-mode tails past the cutoff sum to >= 1e-9.
Eigen::VectorXd photon_number_distribution(const SqueezerState& state, int cutoff);

struct GainCurveRow {
  double power;        // arbitrary units
  double multimode;    // sum_k sinh^2(scale sqrt(P) c_k)
  double single_mode;  // sinh^2(scale sqrt(P))
  double linear;       // scale^2 P
};

std::vector<GainCurveRow> gain_curve(const Eigen::VectorXd& coefficients,
                                     std::span<const double> powers,
                                     double power_to_gain_scale);

// One pulse: per-mode photon numbers drawn from the geometric law. Signal
// and idler numbers are identical mode by mode (perfect pair correlation),
// so one vector serves both arms.
std::vector<long> sample_photon_numbers(const SqueezerState& state, rng::Stream& stream);
std::vector<long> sample_photon_numbers(const SqueezerState& state, std::uint64_t seed);

}  // namespace pdcsim

#endif
