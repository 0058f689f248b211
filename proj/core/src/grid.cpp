#include "pdcsim/grid.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "pdcsim/errors.hpp"

namespace pdcsim {

namespace {

double validated_step(const Eigen::VectorXd& axis, const char* name) {
  if (axis.size() < 2) {
    throw DomainError(std::string(name) + " axis needs at least 2 points");
  }
  const double step = (axis[axis.size() - 1] - axis[0]) / static_cast<double>(axis.size() - 1);
  if (!(step > 0.0)) {
    throw DomainError(std::string(name) + " axis must be strictly ascending");
  }
  // Uniformity to 1e-12 relative, plus the unavoidable representation noise
  // of differences between doubles of magnitude |omega|.
  const double tol = 1e-12 * step +
                     8.0 * std::numeric_limits<double>::epsilon() * std::abs(axis[axis.size() - 1]);
  for (Eigen::Index i = 1; i < axis.size(); ++i) {
    const double d = axis[i] - axis[i - 1];
    if (std::abs(d - step) > tol) {
      throw DomainError(std::string(name) + " axis step is not uniform");
    }
  }
  return step;
}

}  // namespace

FrequencyGrid::FrequencyGrid(Eigen::VectorXd signal_axis, Eigen::VectorXd idler_axis)
    : signal_(std::move(signal_axis)), idler_(std::move(idler_axis)) {
  signal_step_ = validated_step(signal_, "signal");
  idler_step_ = validated_step(idler_, "idler");
}

FrequencyGrid FrequencyGrid::centered(double signal_center, double idler_center,
                                      double signal_half_span, double idler_half_span,
                                      Eigen::Index points_per_axis) {
  if (points_per_axis < 2) throw DomainError("grid needs at least 2 points per axis");
  if (!(signal_half_span > 0.0) || !(idler_half_span > 0.0)) {
    throw DomainError("grid half spans must be positive");
  }
  Eigen::VectorXd s = Eigen::VectorXd::LinSpaced(points_per_axis,
                                                 signal_center - signal_half_span,
                                                 signal_center + signal_half_span);
  Eigen::VectorXd i = Eigen::VectorXd::LinSpaced(points_per_axis,
                                                 idler_center - idler_half_span,
                                                 idler_center + idler_half_span);
  return FrequencyGrid(std::move(s), std::move(i));
}

}  // namespace pdcsim
