#include "pdcsim/detection.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pdcsim/errors.hpp"

namespace pdcsim {

void DetectorModel::validate() const {
  if (!(efficiency >= 0.0) || !(efficiency <= 1.0)) {
    throw DomainError("detector efficiency must be in [0, 1]");
  }
  if (!(background_click_probability >= 0.0) || !(background_click_probability < 1.0)) {
    throw DomainError("background click probability must be in [0, 1)");
  }
}

double click_probability(const SqueezerState& state, const DetectorModel& det) {
  det.validate();
  const Eigen::VectorXd n = state.mode_mean_photons();
  double no_click = 1.0 - det.background_click_probability;
  for (Eigen::Index k = 0; k < n.size(); ++k) {
    no_click /= 1.0 + det.efficiency * n[k];
  }
  return 1.0 - no_click;
}

double mean_photon_estimate(double p_click, double efficiency) {
  if (!(efficiency > 0.0) || !(efficiency <= 1.0)) {
    throw DomainError("mean photon estimate needs efficiency in (0, 1]");
  }
  if (!(p_click >= 0.0) || !(p_click < 1.0)) {
    throw DomainError("click probability must be in [0, 1)");
  }
  return p_click / efficiency;
}

double g2_estimator(double p1, double p2, double pc) {
  if (!(p1 * p2 > 0.0)) throw DomainError("g2 estimator needs p1, p2 > 0");
  return pc / (p1 * p2);
}

CorrectedProbabilities background_correct(double p1, double p2, double pc,
                                          double background1, double background2) {
  const double b1 = background1;
  const double b2 = background2;
  if (!(b1 >= 0.0) || b1 >= 1.0 || !(b2 >= 0.0) || b2 >= 1.0) {
    throw DomainError("background probabilities must be in [0, 1)");
  }
  CorrectedProbabilities out;
  out.p1 = (p1 - b1) / (1.0 - b1);
  out.p2 = (p2 - b2) / (1.0 - b2);
  if (out.p1 < 0.0 || out.p2 < 0.0) {
    throw NegativeCorrected("background exceeds the measured singles probability");
  }
  // invert pc = sc(1-b1)(1-b2) + b1 s2 (1-b2) + b2 s1 (1-b1) + b1 b2
  const double numerator =
      pc - b1 * out.p2 * (1.0 - b2) - b2 * out.p1 * (1.0 - b1) - b1 * b2;
  double sc = numerator / ((1.0 - b1) * (1.0 - b2));
  if (sc < 0.0) {
    sc = 0.0;
    out.clamped = true;
  }
  out.pc = sc;
  out.g2 = (out.p1 * out.p2 > 0.0) ? sc / (out.p1 * out.p2)
                                   : std::numeric_limits<double>::quiet_NaN();
  return out;
}

CorrectedProbabilities background_correct(double p1, double p2, double pc, double background) {
  return background_correct(p1, p2, pc, background, background);
}

double g2_standard_error(double p1, double p2, double pc, long long pulses) {
  if (pulses <= 0 || !(pc > 0.0) || !(p1 > 0.0) || !(p2 > 0.0)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  // Var(g)/g^2 from the multinomial covariance of (p1, p2, pc):
  //   Var(pi) = pi(1-pi)/N, Cov(p1,p2) = (pc - p1 p2)/N, Cov(pc,pi) = pc(1-pi)/N
  const double g = pc / (p1 * p2);
  const double rel_var = ((1.0 - pc) / pc - (1.0 - p1) / p1 - (1.0 - p2) / p2 +
                          2.0 * pc / (p1 * p2) - 2.0) /
                         static_cast<double>(pulses);
  return g * std::sqrt(std::max(rel_var, 0.0));
}

ExperimentResult simulate_g2_experiment(const SqueezerState& state, const DetectorModel& det1,
                                        const DetectorModel& det2, double splitter_ratio,
                                        long long pulses, std::uint64_t seed) {
  det1.validate();
  det2.validate();
  if (!(splitter_ratio >= 0.0) || !(splitter_ratio <= 1.0)) {
    throw DomainError("splitter ratio must be in [0, 1]");
  }
  if (pulses < 1) throw DomainError("need at least one pulse");

  const Eigen::VectorXd means = state.mode_mean_photons();
  std::vector<rng::GeometricSampler> samplers;
  samplers.reserve(static_cast<std::size_t>(means.size()));
  for (Eigen::Index k = 0; k < means.size(); ++k) samplers.emplace_back(means[k]);

  long long n1 = 0, n2 = 0, nc = 0;
  for (long long pulse = 0; pulse < pulses; ++pulse) {
    rng::Stream stream(seed, static_cast<std::uint64_t>(pulse));
    long photons = 0;
    for (const auto& sampler : samplers) photons += sampler.sample(stream);
    // idler discarded; split the signal photons, then thin each arm
    long arm1 = stream.binomial(photons, splitter_ratio);
    long arm2 = photons - arm1;
    const bool click1 =
        stream.binomial(arm1, det1.efficiency) > 0 ||
        stream.bernoulli(det1.background_click_probability);
    const bool click2 =
        stream.binomial(arm2, det2.efficiency) > 0 ||
        stream.bernoulli(det2.background_click_probability);
    n1 += click1 ? 1 : 0;
    n2 += click2 ? 1 : 0;
    nc += (click1 && click2) ? 1 : 0;
  }

  ExperimentResult result;
  result.pulses = pulses;
  result.seed = seed;
  const double n = static_cast<double>(pulses);
  result.p1 = static_cast<double>(n1) / n;
  result.p2 = static_cast<double>(n2) / n;
  result.pc = static_cast<double>(nc) / n;
  result.g2_raw = (result.p1 * result.p2 > 0.0)
                      ? result.pc / (result.p1 * result.p2)
                      : std::numeric_limits<double>::quiet_NaN();
  result.standard_error = g2_standard_error(result.p1, result.p2, result.pc, pulses);
  const CorrectedProbabilities corrected =
      background_correct(result.p1, result.p2, result.pc,
                         det1.background_click_probability,
                         det2.background_click_probability);
  result.g2_corrected = corrected.g2;
  result.corrected_clamped = corrected.clamped;
  return result;
}

std::vector<GainMeasurementRow> simulate_gain_measurement(
    const Eigen::VectorXd& coefficients, const DetectorModel& det,
    std::span<const double> powers, double power_to_gain_scale, long long pulses_per_point,
    std::uint64_t seed) {
  det.validate();
  if (!(det.efficiency > 0.0)) {
    throw DomainError("gain measurement needs a detector with efficiency > 0");
  }
  if (pulses_per_point < 1) throw DomainError("need at least one pulse per point");
  std::vector<GainMeasurementRow> rows;
  rows.reserve(powers.size());
  std::uint64_t stream_id = 0;
  for (double power : powers) {
    if (!(power >= 0.0)) throw DomainError("pump powers must be >= 0");
    const double gain = power_to_gain_scale * std::sqrt(power);
    const SqueezerState state(coefficients, gain);
    const Eigen::VectorXd means = state.mode_mean_photons();
    std::vector<rng::GeometricSampler> samplers;
    samplers.reserve(static_cast<std::size_t>(means.size()));
    for (Eigen::Index k = 0; k < means.size(); ++k) samplers.emplace_back(means[k]);

    long long clicks = 0;
    for (long long pulse = 0; pulse < pulses_per_point; ++pulse, ++stream_id) {
      rng::Stream stream(seed, stream_id);
      long detected = 0;
      for (const auto& sampler : samplers) {
        detected += stream.binomial(sampler.sample(stream), det.efficiency);
      }
      const bool click =
          detected > 0 || stream.bernoulli(det.background_click_probability);
      clicks += click ? 1 : 0;
    }
    const double p_click = static_cast<double>(clicks) / static_cast<double>(pulses_per_point);
    rows.push_back({power, p_click, p_click / det.efficiency, mean_photon_number(state)});
  }
  return rows;
}

}  // namespace pdcsim
