#include "pdcsim/squeezer.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "pdcsim/errors.hpp"

namespace pdcsim {

SqueezerState::SqueezerState(Eigen::VectorXd coefficients, double gain)
    : coefficients_(std::move(coefficients)), gain_(gain) {
  if (coefficients_.size() == 0) throw DomainError("squeezer needs at least one mode");
  if (!(gain_ >= 0.0) || !std::isfinite(gain_)) throw DomainError("gain must be >= 0");
  for (Eigen::Index k = 0; k < coefficients_.size(); ++k) {
    if (!(coefficients_[k] >= 0.0) || !std::isfinite(coefficients_[k])) {
      throw DomainError("mode coefficients must be non-negative");
    }
  }
}

Eigen::VectorXd SqueezerState::mode_mean_photons() const {
  return (gain_ * coefficients_).array().sinh().square();
}

double mean_photon_number(const SqueezerState& state) {
  return state.mode_mean_photons().sum();
}

double mean_photon_to_squeezing_db(double mean_photons) {
  if (!(mean_photons >= 0.0)) throw DomainError("mean photon number must be >= 0");
  const double r = std::asinh(std::sqrt(mean_photons));
  return 20.0 * r * std::log10(std::exp(1.0));
}

double g2_analytic(const SqueezerState& state) {
  const Eigen::VectorXd n = state.mode_mean_photons();
  const double total = n.sum();
  if (!(total > 0.0)) throw ZeroGain("g2 is undefined for the vacuum state");
  // per-mode thermal: <n(n-1)> = 2 n_k^2; cross terms factorize
  return 1.0 + n.squaredNorm() / (total * total);
}

Eigen::VectorXd photon_number_distribution(const SqueezerState& state, int cutoff) {
  if (cutoff < 1) throw DomainError("cutoff must be >= 1");
  const Eigen::VectorXd means = state.mode_mean_photons();

  // union bound on the missing mass: sum_k q_k^(cutoff+1), q = n/(1+n)
  auto tail_bound = [&](int c) {
    double t = 0.0;
    for (Eigen::Index k = 0; k < means.size(); ++k) {
      if (means[k] <= 0.0) continue;
      const double log_q = std::log(means[k]) - std::log1p(means[k]);
      t += std::exp(static_cast<double>(c + 1) * log_q);
    }
    return t;
  };
  if (tail_bound(cutoff) >= 1e-9) {
    int required = cutoff;
    while (required < 1 << 22 && tail_bound(required) >= 1e-9) required *= 2;
    // binary refine
    int lo = cutoff, hi = required;
    while (lo + 1 < hi) {
      const int mid = lo + (hi - lo) / 2;
      (tail_bound(mid) >= 1e-9 ? lo : hi) = mid;
    }
    std::ostringstream msg;
    msg << "cutoff " << cutoff << " leaves tail mass " << tail_bound(cutoff)
        << "; need at least " << hi;
    throw CutoffTooSmall(msg.str(), hi);
  }

  Eigen::VectorXd dist = Eigen::VectorXd::Zero(cutoff + 1);
  dist[0] = 1.0;
  Eigen::VectorXd next(cutoff + 1);
  for (Eigen::Index k = 0; k < means.size(); ++k) {
    const double mean = means[k];
    if (mean <= 0.0) continue;
    const double q = mean / (1.0 + mean);
    // geometric law P(n) = (1-q) q^n truncated at the cutoff
    next.setZero();
    for (int n = 0; n <= cutoff; ++n) {
      const double pn = (1.0 - q) * std::pow(q, n);
      if (pn == 0.0) break;
      for (int m = 0; m + n <= cutoff; ++m) next[m + n] += dist[m] * pn;
    }
    dist.swap(next);
  }
  return dist;
}

std::vector<GainCurveRow> gain_curve(const Eigen::VectorXd& coefficients,
                                     std::span<const double> powers,
                                     double power_to_gain_scale) {
  if (!(power_to_gain_scale > 0.0)) throw DomainError("power-to-gain scale must be > 0");
  std::vector<GainCurveRow> rows;
  rows.reserve(powers.size());
  for (double power : powers) {
    if (!(power >= 0.0)) throw DomainError("pump powers must be >= 0");
    const double gain = power_to_gain_scale * std::sqrt(power);
    const SqueezerState state(coefficients, gain);
    rows.push_back({power, mean_photon_number(state), std::sinh(gain) * std::sinh(gain),
                    power_to_gain_scale * power_to_gain_scale * power});
  }
  return rows;
}

std::vector<long> sample_photon_numbers(const SqueezerState& state, rng::Stream& stream) {
  const Eigen::VectorXd means = state.mode_mean_photons();
  std::vector<long> counts(static_cast<std::size_t>(means.size()));
  for (Eigen::Index k = 0; k < means.size(); ++k) {
    counts[static_cast<std::size_t>(k)] = stream.geometric_photon_number(means[k]);
  }
  return counts;
}

std::vector<long> sample_photon_numbers(const SqueezerState& state, std::uint64_t seed) {
  rng::Stream stream(seed, 0);
  return sample_photon_numbers(state, stream);
}

}  // namespace pdcsim
