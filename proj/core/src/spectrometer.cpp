#include "pdcsim/spectrometer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "pdcsim/constants.hpp"
#include "pdcsim/errors.hpp"

namespace pdcsim {

void SpectrometerConfig::validate() const {
  if (dispersion == 0.0 || !std::isfinite(dispersion)) {
    throw DomainError("fiber dispersion must be nonzero");
  }
  if (!(fiber_length > 0.0)) throw DomainError("fiber length must be > 0");
  if (!(reference_wavelength > 0.0)) throw DomainError("reference wavelength must be > 0");
  if (!(bin_width > 0.0)) throw DomainError("bin width must be > 0");
  if (bins < 8) throw DomainError("need at least 8 time bins");
  if (!(timing_jitter_sigma >= 0.0)) throw DomainError("timing jitter must be >= 0");
}

double arrival_time(double wavelength, const SpectrometerConfig& cfg) {
  return cfg.reference_delay +
         cfg.dispersion * cfg.fiber_length * (wavelength - cfg.reference_wavelength);
}

double wavelength_at(double time, const SpectrometerConfig& cfg) {
  return cfg.reference_wavelength +
         (time - cfg.reference_delay) / (cfg.dispersion * cfg.fiber_length);
}

TimeHistogram2D::TimeHistogram2D(SpectrometerConfig signal_cfg, SpectrometerConfig idler_cfg)
    : signal_cfg_(std::move(signal_cfg)), idler_cfg_(std::move(idler_cfg)) {
  signal_cfg_.validate();
  idler_cfg_.validate();
  counts_ = Eigen::MatrixX<std::int64_t>::Zero(signal_cfg_.bins, idler_cfg_.bins);
}

bool TimeHistogram2D::record(double signal_time, double idler_time) {
  const double s = (signal_time - signal_cfg_.window_start) / signal_cfg_.bin_width;
  const double i = (idler_time - idler_cfg_.window_start) / idler_cfg_.bin_width;
  if (s < 0.0 || i < 0.0 || s >= signal_cfg_.bins || i >= idler_cfg_.bins) return false;
  counts_(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) += 1;
  return true;
}

TimeHistogram2D simulate_spectrometer(const JointSpectralAmplitude& jsa,
                                      const SpectrometerConfig& signal_cfg,
                                      const SpectrometerConfig& idler_cfg,
                                      const DetectorModel& signal_det,
                                      const DetectorModel& idler_det, long long pairs,
                                      std::uint64_t seed) {
  signal_det.validate();
  idler_det.validate();
  if (pairs < 1) throw DomainError("need at least one photon pair");

  // cumulative mass over flattened grid cells for inverse-CDF sampling
  const Eigen::MatrixXd jsi = joint_spectral_intensity(jsa);
  const double total = jsi.sum();
  if (!(total > 0.0)) throw NotNormalizable("JSI carries no probability mass");
  const Eigen::Index rows = jsi.rows(), cols = jsi.cols();
  std::vector<double> cdf(static_cast<std::size_t>(rows * cols));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      acc += jsi(i, j) / total;
      cdf[static_cast<std::size_t>(i * cols + j)] = acc;
    }
  }
  cdf.back() = 1.0;

  const auto& ws = jsa.grid().signal();
  const auto& wi = jsa.grid().idler();
  const double ds = jsa.grid().signal_step();
  const double di = jsa.grid().idler_step();

  TimeHistogram2D histogram(signal_cfg, idler_cfg);
  long long detected = 0, overflow = 0;
  for (long long pair = 0; pair < pairs; ++pair) {
    rng::Stream stream(seed, static_cast<std::uint64_t>(pair));
    const double u = stream.uniform();
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const auto cell = static_cast<Eigen::Index>(it - cdf.begin());
    const Eigen::Index i = cell / cols, j = cell % cols;
    // uniform dithering inside the cell avoids grid artifacts downstream
    const double omega_s = ws[i] + (stream.uniform() - 0.5) * ds;
    const double omega_i = wi[j] + (stream.uniform() - 0.5) * di;

    if (!stream.bernoulli(signal_det.efficiency)) continue;
    if (!stream.bernoulli(idler_det.efficiency)) continue;

    double t_s = arrival_time(vacuum_wavelength(omega_s), signal_cfg);
    double t_i = arrival_time(vacuum_wavelength(omega_i), idler_cfg);
    if (signal_cfg.timing_jitter_sigma > 0.0) {
      t_s += signal_cfg.timing_jitter_sigma * stream.gaussian();
    }
    if (idler_cfg.timing_jitter_sigma > 0.0) {
      t_i += idler_cfg.timing_jitter_sigma * stream.gaussian();
    }
    ++detected;
    if (!histogram.record(t_s, t_i)) ++overflow;
  }

  if (detected > 0 && static_cast<double>(overflow) > 1e-3 * static_cast<double>(detected)) {
    std::ostringstream msg;
    msg << overflow << " of " << detected
        << " detected pairs fell outside the histogram time window";
    throw WindowOverflow(msg.str());
  }
  return histogram;
}

JsiEstimate reconstruct_jsi(const TimeHistogram2D& histogram) {
  const auto& scfg = histogram.signal_config();
  const auto& icfg = histogram.idler_config();
  const Eigen::Index rows = scfg.bins, cols = icfg.bins;

  auto axis_for = [](const SpectrometerConfig& cfg) {
    Eigen::VectorXd lambda(cfg.bins);
    for (int b = 0; b < cfg.bins; ++b) {
      const double t = cfg.window_start + (b + 0.5) * cfg.bin_width;
      lambda[b] = wavelength_at(t, cfg);
    }
    return lambda;
  };
  Eigen::VectorXd lambda_s = axis_for(scfg);
  Eigen::VectorXd lambda_i = axis_for(icfg);

  Eigen::MatrixXd intensity = histogram.counts().cast<double>();
  // negative dispersion reverses the time axis relative to wavelength;
  // flip to ascending wavelength axes
  const bool flip_s = lambda_s[0] > lambda_s[rows - 1];
  const bool flip_i = lambda_i[0] > lambda_i[cols - 1];
  if (flip_s) {
    lambda_s.reverseInPlace();
    intensity = intensity.colwise().reverse().eval();
  }
  if (flip_i) {
    lambda_i.reverseInPlace();
    intensity = intensity.rowwise().reverse().eval();
  }

  JsiEstimate estimate;
  estimate.signal_wavelengths = std::move(lambda_s);
  estimate.idler_wavelengths = std::move(lambda_i);
  const double total = intensity.sum();
  if (total > 0.0) {
    estimate.intensity = intensity / total;
  } else {
    estimate.intensity = Eigen::MatrixXd::Zero(rows, cols);
    estimate.empty = true;
  }
  return estimate;
}

JsiEstimate model_jsi_on(const JointSpectralAmplitude& jsa, const JsiEstimate& reference) {
  const Eigen::MatrixXd jsi = joint_spectral_intensity(jsa);
  const auto& ws = jsa.grid().signal();
  const auto& wi = jsa.grid().idler();
  const double ds = jsa.grid().signal_step();
  const double di = jsa.grid().idler_step();

  auto interp = [&](double omega_s, double omega_i) -> double {
    const double x = (omega_s - ws[0]) / ds;
    const double y = (omega_i - wi[0]) / di;
    if (x < 0.0 || y < 0.0 || x > static_cast<double>(ws.size() - 1) ||
        y > static_cast<double>(wi.size() - 1)) {
      return 0.0;
    }
    const auto i0 = std::min<Eigen::Index>(static_cast<Eigen::Index>(x), ws.size() - 2);
    const auto j0 = std::min<Eigen::Index>(static_cast<Eigen::Index>(y), wi.size() - 2);
    const double fx = x - static_cast<double>(i0);
    const double fy = y - static_cast<double>(j0);
    return jsi(i0, j0) * (1 - fx) * (1 - fy) + jsi(i0 + 1, j0) * fx * (1 - fy) +
           jsi(i0, j0 + 1) * (1 - fx) * fy + jsi(i0 + 1, j0 + 1) * fx * fy;
  };

  JsiEstimate model;
  model.signal_wavelengths = reference.signal_wavelengths;
  model.idler_wavelengths = reference.idler_wavelengths;
  model.intensity.resize(reference.intensity.rows(), reference.intensity.cols());
  for (Eigen::Index i = 0; i < model.intensity.rows(); ++i) {
    const double ls = reference.signal_wavelengths[i];
    const double js = omega_per_wavelength(ls);  // |d omega / d lambda|
    for (Eigen::Index j = 0; j < model.intensity.cols(); ++j) {
      const double li = reference.idler_wavelengths[j];
      model.intensity(i, j) = interp(angular_frequency(ls), angular_frequency(li)) * js *
                              omega_per_wavelength(li);
    }
  }
  const double total = model.intensity.sum();
  if (total > 0.0) model.intensity /= total;
  return model;
}

double similarity(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch("similarity needs matrices of identical shape");
  }
  const double n = static_cast<double>(a.size());
  const double ma = a.mean(), mb = b.mean();
  const Eigen::ArrayXXd da = a.array() - ma, db = b.array() - mb;
  const double va = (da * da).sum() / n, vb = (db * db).sum() / n;
  if (!(va > 0.0) || !(vb > 0.0)) return 0.0;
  return (da * db).sum() / n / std::sqrt(va * vb);
}

SpectrometerConfig fit_time_window(SpectrometerConfig cfg, double min_wavelength,
                                   double max_wavelength, double jitter_margin_sigmas) {
  const double t1 = arrival_time(min_wavelength, cfg);
  const double t2 = arrival_time(max_wavelength, cfg);
  const double margin = jitter_margin_sigmas * cfg.timing_jitter_sigma;
  const double lo = std::min(t1, t2) - margin;
  const double hi = std::max(t1, t2) + margin;
  if (cfg.bins < 8) throw DomainError("need at least 8 time bins");
  cfg.window_start = lo;
  cfg.bin_width = (hi - lo) / cfg.bins;
  return cfg;
}

}  // namespace pdcsim
