#include "pdcsim/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "pdcsim/errors.hpp"

namespace pdcsim {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

KeyValueDoc KeyValueDoc::parse(const std::string& text, const std::string& origin) {
  KeyValueDoc doc;
  doc.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << origin << ":" << number << ": expected 'key = value'";
      throw ConfigError(msg.str());
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      std::ostringstream msg;
      msg << origin << ":" << number << ": empty key";
      throw ConfigError(msg.str());
    }
    if (doc.entries_.count(key)) {
      std::ostringstream msg;
      msg << origin << ":" << number << ": duplicate key '" << key << "' (first on line "
          << doc.entries_[key].line << ")";
      throw ConfigError(msg.str());
    }
    doc.entries_[key] = Entry{value, number};
  }
  return doc;
}

KeyValueDoc KeyValueDoc::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config file: " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), file.string());
}

void KeyValueDoc::apply_override(const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override must look like key=value: " + assignment);
  }
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  if (key.empty()) throw ConfigError("override has an empty key: " + assignment);
  entries_[key] = Entry{value, 0};
}

bool KeyValueDoc::contains(const std::string& key) const { return entries_.count(key) > 0; }

namespace {

// Tracks which keys were consumed so leftovers can be reported verbatim.
class Reader {
 public:
  explicit Reader(const KeyValueDoc& doc) : doc_(doc) {}

  double number(const std::string& key, double fallback) {
    const auto* e = take(key);
    if (!e) return fallback;
    try {
      std::size_t used = 0;
      const double v = std::stod(e->value, &used);
      if (used != e->value.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      fail(key, *e, "not a number");
    }
  }

  long long integer(const std::string& key, long long fallback) {
    const auto* e = take(key);
    if (!e) return fallback;
    long long v = 0;
    const auto [p, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
    if (ec != std::errc() || p != e->value.data() + e->value.size()) {
      fail(key, *e, "not an integer");
    }
    return v;
  }

  std::string text(const std::string& key, std::string fallback) {
    const auto* e = take(key);
    return e ? e->value : fallback;
  }

  // "a,b,c" or "lo:hi:step" (inclusive endpoints within half a step)
  std::vector<double> list(const std::string& key, std::vector<double> fallback) {
    const auto* e = take(key);
    if (!e) return fallback;
    const std::string& v = e->value;
    std::vector<double> out;
    if (v.find(':') != std::string::npos) {
      double lo = 0, hi = 0, step = 0;
      if (std::sscanf(v.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || !(step > 0.0)) {
        fail(key, *e, "range must be lo:hi:step with step > 0");
      }
      for (double x = lo; x <= hi + 0.5 * step; x += step) out.push_back(x);
    } else {
      std::istringstream in(v);
      std::string item;
      while (std::getline(in, item, ',')) {
        try {
          out.push_back(std::stod(trim(item)));
        } catch (const std::exception&) {
          fail(key, *e, "not a comma-separated list of numbers");
        }
      }
    }
    if (out.empty()) fail(key, *e, "empty list");
    return out;
  }

  void finish() const {
    std::vector<std::string> unknown;
    for (const auto& [key, entry] : doc_.entries()) {
      if (!consumed_.count(key)) {
        std::ostringstream item;
        item << "'" << key << "'";
        if (entry.line > 0) item << " (" << doc_.origin() << ":" << entry.line << ")";
        unknown.push_back(item.str());
      }
    }
    if (!unknown.empty()) {
      std::ostringstream msg;
      msg << "unknown configuration key" << (unknown.size() > 1 ? "s" : "") << ": ";
      for (std::size_t i = 0; i < unknown.size(); ++i) {
        if (i) msg << ", ";
        msg << unknown[i];
      }
      throw ConfigError(msg.str());
    }
  }

 private:
  const KeyValueDoc::Entry* take(const std::string& key) {
    consumed_.insert(key);
    const auto it = doc_.entries().find(key);
    return it == doc_.entries().end() ? nullptr : &it->second;
  }

  [[noreturn]] void fail(const std::string& key, const KeyValueDoc::Entry& e,
                         const char* what) const {
    std::ostringstream msg;
    msg << doc_.origin();
    if (e.line > 0) msg << ":" << e.line;
    msg << ": key '" << key << "': " << what << " ('" << e.value << "')";
    throw ConfigError(msg.str());
  }

  const KeyValueDoc& doc_;
  std::set<std::string> consumed_;
};

PhasematchShape shape_from(const std::string& name) {
  if (name == "sinc") return PhasematchShape::kSinc;
  if (name == "gaussian-approx") return PhasematchShape::kGaussianApprox;
  throw ConfigError("source.phasematching.shape must be 'sinc' or 'gaussian-approx', got '" +
                    name + "'");
}

const char* shape_name(PhasematchShape shape) {
  return shape == PhasematchShape::kSinc ? "sinc" : "gaussian-approx";
}

}  // namespace

RunConfig default_run_config() {
  RunConfig c;
  c.pump.central_wavelength = 768e-9;
  c.pump.fwhm_wavelength = 1.95e-9;
  c.pump.chirp = 0.0;

  // kappa defaults solved by the `calibrate` subcommand for the 8 mm source:
  // K over pump width is minimal at 1.95 nm FWHM and the first sinc zero
  // sits 8.4 nm from the signal center (run `pdcsim calibrate` to re-derive)
  c.phasematching.effective_length = 8e-3;
  c.phasematching.kappa_signal = 1.1833270132979349e-10;
  c.phasematching.kappa_idler = -9.7824666243291313e-11;
  c.phasematching.signal_central_wavelength = 1544e-9;
  c.phasematching.idler_central_wavelength = 1528e-9;
  c.phasematching.shape = PhasematchShape::kGaussianApprox;

  c.grid_points = 256;
  c.grid_pump_sigma_span = 4.0;

  c.squeezer_gain = 1.0;
  c.power_to_gain_scale = 1.0;

  c.detector.efficiency = 0.25;
  c.detector.background_click_probability = 0.0;
  c.splitter_ratio = 0.5;

  c.spectrometer_dispersion = -20.0 * kDispersionUnit;  // -20 ps/(nm km)
  c.spectrometer_fiber_length = 20e3;                   // 20 km per arm
  c.spectrometer_jitter_sigma = 100e-12;
  c.spectrometer_bins = 128;
  c.spectrometer_bin_width = 0.0;
  c.spectrometer_reference_delay = 0.0;

  c.sweep_pump_fwhms.clear();
  for (double w = 0.5e-9; w <= 4.5e-9 + 0.025e-9; w += 0.05e-9) c.sweep_pump_fwhms.push_back(w);
  c.sweep_powers.clear();
  for (int i = 1; i <= 16; ++i) c.sweep_powers.push_back(0.1 * i);

  c.pulses = 1000000;
  c.pairs = 1000000;
  c.seed = 12345;

  c.calibration.optimal_pump_fwhm = 1.95e-9;
  c.calibration.first_zero_offset = 8.4e-9;
  c.calibration.sweep_lo = 0.5e-9;
  c.calibration.sweep_hi = 4.5e-9;
  c.calibration.grid_points = 128;
  return c;
}

RunConfig run_config_from(const KeyValueDoc& doc) {
  RunConfig d = default_run_config();
  Reader r(doc);

  RunConfig c = d;
  c.pump.central_wavelength = r.number("source.pump.central_wavelength_nm",
                                       d.pump.central_wavelength * 1e9) * 1e-9;
  c.pump.fwhm_wavelength = r.number("source.pump.fwhm_nm", d.pump.fwhm_wavelength * 1e9) * 1e-9;
  c.pump.chirp = r.number("source.pump.chirp_rad_s2", d.pump.chirp);

  c.phasematching.effective_length =
      r.number("source.phasematching.effective_length_mm",
               d.phasematching.effective_length * 1e3) * 1e-3;
  c.phasematching.kappa_signal =
      r.number("source.phasematching.kappa_signal_fs_per_mm",
               d.phasematching.kappa_signal * 1e12) * 1e-12;
  c.phasematching.kappa_idler =
      r.number("source.phasematching.kappa_idler_fs_per_mm",
               d.phasematching.kappa_idler * 1e12) * 1e-12;
  c.phasematching.signal_central_wavelength =
      r.number("source.phasematching.signal_wavelength_nm",
               d.phasematching.signal_central_wavelength * 1e9) * 1e-9;
  c.phasematching.idler_central_wavelength =
      r.number("source.phasematching.idler_wavelength_nm",
               d.phasematching.idler_central_wavelength * 1e9) * 1e-9;
  c.phasematching.shape =
      shape_from(r.text("source.phasematching.shape", shape_name(d.phasematching.shape)));

  c.grid_points = static_cast<Eigen::Index>(r.integer("source.grid.points", d.grid_points));
  c.grid_pump_sigma_span = r.number("source.grid.pump_sigma_span", d.grid_pump_sigma_span);

  c.squeezer_gain = r.number("squeezer.gain", d.squeezer_gain);
  c.power_to_gain_scale = r.number("squeezer.power_to_gain_scale", d.power_to_gain_scale);

  c.detector.efficiency = r.number("detectors.efficiency", d.detector.efficiency);
  c.detector.background_click_probability =
      r.number("detectors.background_click_probability",
               d.detector.background_click_probability);
  c.splitter_ratio = r.number("detectors.splitter_ratio", d.splitter_ratio);

  c.spectrometer_dispersion =
      r.number("spectrometer.dispersion_ps_per_nm_km",
               d.spectrometer_dispersion / kDispersionUnit) * kDispersionUnit;
  c.spectrometer_fiber_length =
      r.number("spectrometer.fiber_length_km", d.spectrometer_fiber_length * 1e-3) * 1e3;
  c.spectrometer_jitter_sigma =
      r.number("spectrometer.timing_jitter_ps", d.spectrometer_jitter_sigma * 1e12) * 1e-12;
  c.spectrometer_bins = static_cast<int>(r.integer("spectrometer.bins", d.spectrometer_bins));
  c.spectrometer_bin_width =
      r.number("spectrometer.bin_width_ps", d.spectrometer_bin_width * 1e12) * 1e-12;
  c.spectrometer_reference_delay =
      r.number("spectrometer.reference_delay_ps", d.spectrometer_reference_delay * 1e12) * 1e-12;

  {
    std::vector<double> fallback_nm;
    for (double w : d.sweep_pump_fwhms) fallback_nm.push_back(w * 1e9);
    c.sweep_pump_fwhms.clear();
    for (double w : r.list("sweep.pump_fwhm_nm", fallback_nm)) {
      c.sweep_pump_fwhms.push_back(w * 1e-9);
    }
  }
  c.sweep_powers = r.list("sweep.powers", d.sweep_powers);

  c.pulses = r.integer("run.pulses", d.pulses);
  c.pairs = r.integer("run.pairs", d.pairs);
  const long long seed = r.integer("run.seed", static_cast<long long>(d.seed));
  c.seed = static_cast<std::uint64_t>(seed);

  c.calibration.optimal_pump_fwhm =
      r.number("calibrate.optimal_pump_fwhm_nm", d.calibration.optimal_pump_fwhm * 1e9) * 1e-9;
  c.calibration.first_zero_offset =
      r.number("calibrate.first_zero_nm", d.calibration.first_zero_offset * 1e9) * 1e-9;
  c.calibration.sweep_lo =
      r.number("calibrate.search_lo_nm", d.calibration.sweep_lo * 1e9) * 1e-9;
  c.calibration.sweep_hi =
      r.number("calibrate.search_hi_nm", d.calibration.sweep_hi * 1e9) * 1e-9;
  c.calibration.grid_points =
      static_cast<Eigen::Index>(r.integer("calibrate.grid_points", d.calibration.grid_points));

  r.finish();

  // fail fast on physically inconsistent values
  c.pump.validate();
  c.phasematching.validate();
  c.detector.validate();
  if (c.grid_points < 2) throw ConfigError("source.grid.points must be >= 2");
  if (c.pulses < 1) throw ConfigError("run.pulses must be >= 1");
  if (c.pairs < 1) throw ConfigError("run.pairs must be >= 1");
  if (!(c.splitter_ratio >= 0.0) || !(c.splitter_ratio <= 1.0)) {
    throw ConfigError("detectors.splitter_ratio must be in [0, 1]");
  }
  return c;
}

SpectrometerConfig RunConfig::signal_spectrometer(const FrequencyGrid& grid) const {
  SpectrometerConfig cfg;
  cfg.dispersion = spectrometer_dispersion;
  cfg.fiber_length = spectrometer_fiber_length;
  cfg.reference_wavelength = phasematching.signal_central_wavelength;
  cfg.reference_delay = spectrometer_reference_delay;
  cfg.timing_jitter_sigma = spectrometer_jitter_sigma;
  cfg.bins = spectrometer_bins;
  if (spectrometer_bin_width > 0.0) {
    cfg.bin_width = spectrometer_bin_width;
    cfg.window_start = spectrometer_reference_delay - 0.5 * cfg.bin_width * cfg.bins;
    return cfg;
  }
  const double lo = vacuum_wavelength(grid.signal()[grid.signal_points() - 1]);
  const double hi = vacuum_wavelength(grid.signal()[0]);
  return fit_time_window(cfg, lo, hi);
}

SpectrometerConfig RunConfig::idler_spectrometer(const FrequencyGrid& grid) const {
  SpectrometerConfig cfg;
  cfg.dispersion = spectrometer_dispersion;
  cfg.fiber_length = spectrometer_fiber_length;
  cfg.reference_wavelength = phasematching.idler_central_wavelength;
  cfg.reference_delay = spectrometer_reference_delay;
  cfg.timing_jitter_sigma = spectrometer_jitter_sigma;
  cfg.bins = spectrometer_bins;
  if (spectrometer_bin_width > 0.0) {
    cfg.bin_width = spectrometer_bin_width;
    cfg.window_start = spectrometer_reference_delay - 0.5 * cfg.bin_width * cfg.bins;
    return cfg;
  }
  const double lo = vacuum_wavelength(grid.idler()[grid.idler_points() - 1]);
  const double hi = vacuum_wavelength(grid.idler()[0]);
  return fit_time_window(cfg, lo, hi);
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  // prefer the shortest representation that round-trips
  for (int precision = 1; precision <= 16; ++precision) {
    char candidate[32];
    std::snprintf(candidate, sizeof(candidate), "%.*g", precision, value);
    if (std::stod(candidate) == value) return candidate;
  }
  return buffer;
}

std::vector<std::pair<std::string, std::string>> to_key_values(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> kv;
  auto num = [&](const std::string& key, double v) { kv.emplace_back(key, format_double(v)); };
  auto put = [&](const std::string& key, const std::string& v) { kv.emplace_back(key, v); };

  num("source.pump.central_wavelength_nm", c.pump.central_wavelength * 1e9);
  num("source.pump.fwhm_nm", c.pump.fwhm_wavelength * 1e9);
  num("source.pump.chirp_rad_s2", c.pump.chirp);
  num("source.phasematching.effective_length_mm", c.phasematching.effective_length * 1e3);
  num("source.phasematching.kappa_signal_fs_per_mm", c.phasematching.kappa_signal * 1e12);
  num("source.phasematching.kappa_idler_fs_per_mm", c.phasematching.kappa_idler * 1e12);
  num("source.phasematching.signal_wavelength_nm",
      c.phasematching.signal_central_wavelength * 1e9);
  num("source.phasematching.idler_wavelength_nm",
      c.phasematching.idler_central_wavelength * 1e9);
  put("source.phasematching.shape", shape_name(c.phasematching.shape));
  num("source.grid.points", static_cast<double>(c.grid_points));
  num("source.grid.pump_sigma_span", c.grid_pump_sigma_span);
  num("squeezer.gain", c.squeezer_gain);
  num("squeezer.power_to_gain_scale", c.power_to_gain_scale);
  num("detectors.efficiency", c.detector.efficiency);
  num("detectors.background_click_probability", c.detector.background_click_probability);
  num("detectors.splitter_ratio", c.splitter_ratio);
  num("spectrometer.dispersion_ps_per_nm_km", c.spectrometer_dispersion / kDispersionUnit);
  num("spectrometer.fiber_length_km", c.spectrometer_fiber_length * 1e-3);
  num("spectrometer.timing_jitter_ps", c.spectrometer_jitter_sigma * 1e12);
  num("spectrometer.bins", c.spectrometer_bins);
  num("spectrometer.bin_width_ps", c.spectrometer_bin_width * 1e12);
  num("spectrometer.reference_delay_ps", c.spectrometer_reference_delay * 1e12);

  auto join = [](const std::vector<double>& values, double unit) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ",";
      out += format_double(values[i] * unit);
    }
    return out;
  };
  put("sweep.pump_fwhm_nm", join(c.sweep_pump_fwhms, 1e9));
  put("sweep.powers", join(c.sweep_powers, 1.0));

  kv.emplace_back("run.pulses", std::to_string(c.pulses));
  kv.emplace_back("run.pairs", std::to_string(c.pairs));
  kv.emplace_back("run.seed", std::to_string(c.seed));

  num("calibrate.optimal_pump_fwhm_nm", c.calibration.optimal_pump_fwhm * 1e9);
  num("calibrate.first_zero_nm", c.calibration.first_zero_offset * 1e9);
  num("calibrate.search_lo_nm", c.calibration.sweep_lo * 1e9);
  num("calibrate.search_hi_nm", c.calibration.sweep_hi * 1e9);
  num("calibrate.grid_points", static_cast<double>(c.calibration.grid_points));
  return kv;
}

std::uint64_t config_hash(const RunConfig& config) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&](const std::string& s) {
    for (const char ch : s) {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ULL;
    }
  };
  for (const auto& [key, value] : to_key_values(config)) {
    mix(key);
    mix("=");
    mix(value);
    mix("\n");
  }
  return h;
}

}  // namespace pdcsim
