#ifndef PDCSIM_CONFIG_HPP
#define PDCSIM_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pdcsim/calibration.hpp"
#include "pdcsim/detection.hpp"
#include "pdcsim/jsa.hpp"
#include "pdcsim/spectrometer.hpp"

namespace pdcsim {

// Flat `section.key = value` document. '#' starts a comment; keys must be
// unique. Line numbers are kept for diagnostics.
class KeyValueDoc {
 public:
  static KeyValueDoc parse(const std::string& text, const std::string& origin);
  static KeyValueDoc load(const std::filesystem::path& file);

  // value must be "key=value"; later entries win over earlier ones
  void apply_override(const std::string& assignment);

  bool contains(const std::string& key) const;
  const std::string& origin() const { return origin_; }

  struct Entry {
    std::string value;
    int line = 0;
  };
  const std::map<std::string, Entry>& entries() const { return entries_; }

 private:
  std::string origin_;
  std::map<std::string, Entry> entries_;
};

// Full run parameterization. Internal units are SI; the key-value surface
// uses nm / ps / mm / km suffixes as documented in the default config.
struct RunConfig {
  PumpEnvelope pump;
  PhasematchingModel phasematching;
  Eigen::Index grid_points = 256;
  double grid_pump_sigma_span = 4.0;

  double squeezer_gain = 1.0;
  double power_to_gain_scale = 1.0;

  DetectorModel detector;  // both APDs share one model
  double splitter_ratio = 0.5;

  double spectrometer_dispersion = 0.0;     // s/m^2
  double spectrometer_fiber_length = 0.0;   // m
  double spectrometer_jitter_sigma = 0.0;   // s
  int spectrometer_bins = 128;
  double spectrometer_bin_width = 0.0;      // s; 0 = fit to source support
  double spectrometer_reference_delay = 0.0;

  std::vector<double> sweep_pump_fwhms;  // m
  std::vector<double> sweep_powers;      // arbitrary units

  long long pulses = 1000000;
  long long pairs = 1000000;
  std::uint64_t seed = 12345;

  CalibrationTargets calibration;

  // Spectrometer arm configs derived from the shared block; bin widths are
  // fitted to the JSA support when spectrometer_bin_width is 0.
  SpectrometerConfig signal_spectrometer(const FrequencyGrid& grid) const;
  SpectrometerConfig idler_spectrometer(const FrequencyGrid& grid) const;
};

// Built-in defaults: the 768 nm -> 1544 + 1528 nm source with calibrated
// phasematching slopes; see configs/default.conf for the annotated copy.
RunConfig default_run_config();

// Defaults overlaid with a parsed document. Unknown keys are rejected with
// file/line diagnostics; malformed values raise ConfigError.
RunConfig run_config_from(const KeyValueDoc& doc);

// The effective configuration as ordered key-value lines (the exact schema
// accepted by run_config_from); used for manifests and hashing.
std::vector<std::pair<std::string, std::string>> to_key_values(const RunConfig& config);

// FNV-1a hash of the serialized effective configuration.
std::uint64_t config_hash(const RunConfig& config);

std::string format_double(double value);  // shortest round-trip decimal

}  // namespace pdcsim

#endif
