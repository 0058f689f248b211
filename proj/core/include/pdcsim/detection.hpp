#ifndef PDCSIM_DETECTION_HPP
#define PDCSIM_DETECTION_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "pdcsim/squeezer.hpp"

namespace pdcsim {

// Binary (click / no-click) APD. Background lumps dark counts and material
// fluorescence into one uncorrelated per-pulse click probability.
struct DetectorModel {
  double efficiency = 1.0;
  double background_click_probability = 0.0;

  void validate() const;
};

struct ExperimentResult {
  long long pulses = 0;
  double p1 = 0.0;              // click frequency, detector 1
  double p2 = 0.0;              // click frequency, detector 2
  double pc = 0.0;              // coincidence frequency
  double g2_raw = 0.0;          // pc / (p1 p2); 0 when no coincidences occurred
  double g2_corrected = 0.0;    // after background subtraction
  double standard_error = 0.0;  // delta-method s.e. of g2_raw; NaN when pc = 0
  bool corrected_clamped = false;  // corrected pc hit the floor at 0
  std::uint64_t seed = 0;
};

// Click probability of a binary detector on one arm of the state:
// p = 1 - (1 - p_bg) prod_k 1 / (1 + eta n_k), via the thermal generating
// function <(1-eta)^n> = 1 / (1 + eta n).
double click_probability(const SqueezerState& state, const DetectorModel& det);

// <n> ~ p_click / eta; valid far from saturation (p_click < ~0.2).
double mean_photon_estimate(double p_click, double efficiency);

// g2 ~ pc / (p1 p2) for binary detectors far from saturation.
double g2_estimator(double p1, double p2, double pc);

struct CorrectedProbabilities {
  double p1 = 0.0;
  double p2 = 0.0;
  double pc = 0.0;
  double g2 = 0.0;
  bool clamped = false;  // pc was clamped at 0 (no signal coincidences left)
};

// Removes uncorrelated background clicks under the independence model
// p_i = 1 - (1 - s_i)(1 - b_i). Coincidences decompose as
//   pc = sc (1-b1)(1-b2) + b1 s2 (1-b2) + b2 s1 (1-b1) + b1 b2,
// which is inverted for the signal-only coincidence probability sc.
// Throws NegativeCorrected when a singles probability goes negative.
CorrectedProbabilities background_correct(double p1, double p2, double pc,
                                          double background1, double background2);
CorrectedProbabilities background_correct(double p1, double p2, double pc, double background);

// Delta-method standard error of pc/(p1 p2) from multinomial click counts
// over `pulses` trials. NaN when pc = 0 (the estimator is degenerate).
double g2_standard_error(double p1, double p2, double pc, long long pulses);

// Fig. 1(c)-style experiment: the idler is discarded, the signal beam is
// split at `splitter_ratio`, each arm is thinned by its detector efficiency
// and ORed with a background click. Per-pulse randomness comes from the
// counter-based substream (seed, pulse index).
ExperimentResult simulate_g2_experiment(const SqueezerState& state, const DetectorModel& det1,
                                        const DetectorModel& det2, double splitter_ratio,
                                        long long pulses, std::uint64_t seed);

struct GainMeasurementRow {
  double power;
  double p_click;
  double mean_photon_estimate;  // p_click / eta
  double mean_photon_analytic;  // sum_k sinh^2(scale sqrt(P) c_k)
};

// Fig. 1(d)-style powermeter run: one detector on the signal arm, clicks
// accumulated per power point. Stream ids are pulse-global so points are
// independent.
std::vector<GainMeasurementRow> simulate_gain_measurement(
    const Eigen::VectorXd& coefficients, const DetectorModel& det,
    std::span<const double> powers, double power_to_gain_scale, long long pulses_per_point,
    std::uint64_t seed);

}  // namespace pdcsim

#endif
