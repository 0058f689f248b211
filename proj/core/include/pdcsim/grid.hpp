#ifndef PDCSIM_GRID_HPP
#define PDCSIM_GRID_HPP

#include <Eigen/Core>

namespace pdcsim {

// Uniform rectangular grid of angular frequencies (rad/s), one axis per arm.
// Both axes are strictly ascending with constant step; immutable once built.
class FrequencyGrid {
 public:
  FrequencyGrid(Eigen::VectorXd signal_axis, Eigen::VectorXd idler_axis);

  static FrequencyGrid centered(double signal_center, double idler_center,
                                double signal_half_span, double idler_half_span,
                                Eigen::Index points_per_axis);

  const Eigen::VectorXd& signal() const { return signal_; }
  const Eigen::VectorXd& idler() const { return idler_; }
  Eigen::Index signal_points() const { return signal_.size(); }
  Eigen::Index idler_points() const { return idler_.size(); }
  double signal_step() const { return signal_step_; }
  double idler_step() const { return idler_step_; }
  // product of the two steps; the measure of one grid cell
  double cell_measure() const { return signal_step_ * idler_step_; }

 private:
  Eigen::VectorXd signal_;
  Eigen::VectorXd idler_;
  double signal_step_;
  double idler_step_;
};

}  // namespace pdcsim

#endif
