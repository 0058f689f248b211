#ifndef PDCSIM_SPECTROMETER_HPP
#define PDCSIM_SPECTROMETER_HPP

#include <Eigen/Core>
#include <cstdint>

#include "pdcsim/detection.hpp"
#include "pdcsim/jsa.hpp"

namespace pdcsim {

// Dispersive-fiber time-of-flight spectrometer arm: chromatic dispersion maps
// wavelength linearly to arrival time, which is histogrammed in fixed bins.
struct SpectrometerConfig {
  double dispersion = 0.0;            // s per (m of wavelength) per (m of fiber)
  double fiber_length = 0.0;          // m
  double reference_wavelength = 0.0;  // m
  double reference_delay = 0.0;       // s
  double timing_jitter_sigma = 0.0;   // s
  double bin_width = 0.0;             // s
  int bins = 0;
  double window_start = 0.0;          // s, left edge of the first bin

  void validate() const;
  double window_end() const { return window_start + bin_width * bins; }
};

// conventional fiber units: 1 ps/(nm km) = 1e-6 s/m^2
inline constexpr double kDispersionUnit = 1e-6;

// t = reference_delay + dispersion * fiber_length * (lambda - reference_wavelength)
double arrival_time(double wavelength, const SpectrometerConfig& cfg);
double wavelength_at(double time, const SpectrometerConfig& cfg);

// Coincidence counts on the (signal time, idler time) bin grid.
class TimeHistogram2D {
 public:
  TimeHistogram2D(SpectrometerConfig signal_cfg, SpectrometerConfig idler_cfg);

  const SpectrometerConfig& signal_config() const { return signal_cfg_; }
  const SpectrometerConfig& idler_config() const { return idler_cfg_; }
  const Eigen::MatrixX<std::int64_t>& counts() const { return counts_; }
  std::int64_t total() const { return counts_.sum(); }

  // true when both times fall inside the window; increments the bin
  bool record(double signal_time, double idler_time);

 private:
  SpectrometerConfig signal_cfg_;
  SpectrometerConfig idler_cfg_;
  Eigen::MatrixX<std::int64_t> counts_;
};

// Samples photon pairs from the JSI (inverse CDF over grid cells with
// uniform in-cell dithering), disperses them to arrival times with Gaussian
// timing jitter, thins each arm by the detector efficiency, and histograms
// coincidences. Detector backgrounds are not modeled on this path; only
// `efficiency` is used. Throws WindowOverflow when more than 0.1% of the
// detected pairs land outside the time window.
TimeHistogram2D simulate_spectrometer(const JointSpectralAmplitude& jsa,
                                      const SpectrometerConfig& signal_cfg,
                                      const SpectrometerConfig& idler_cfg,
                                      const DetectorModel& signal_det,
                                      const DetectorModel& idler_det, long long pairs,
                                      std::uint64_t seed);

struct JsiEstimate {
  Eigen::VectorXd signal_wavelengths;  // ascending, m
  Eigen::VectorXd idler_wavelengths;   // ascending, m
  Eigen::MatrixXd intensity;           // probability mass per cell (sums to 1)
  bool empty = false;                  // histogram had no counts
};

// Maps bin centers back through the inverse dispersion relation and
// normalizes counts to unit mass. The Jacobian of the linear time-wavelength
// map is constant, so relative intensities pass through unchanged.
JsiEstimate reconstruct_jsi(const TimeHistogram2D& histogram);

// Model JSI resampled onto a reconstruction's wavelength grid (bilinear in
// angular frequency, with the omega-per-wavelength Jacobian), for direct
// comparison against reconstruct_jsi output.
JsiEstimate model_jsi_on(const JointSpectralAmplitude& jsa, const JsiEstimate& reference);

// Pearson correlation over cells; throws ShapeMismatch on different shapes.
double similarity(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Returns a copy of `cfg` with window_start/bin_width covering the JSA's
// wavelength support on that arm plus a jitter margin.
SpectrometerConfig fit_time_window(SpectrometerConfig cfg, double min_wavelength,
                                   double max_wavelength, double jitter_margin_sigmas = 5.0);

}  // namespace pdcsim

#endif
