#ifndef FLUXREG_PIECEWISE_AFFINE_HPP
#define FLUXREG_PIECEWISE_AFFINE_HPP

#include <vector>

#include "fluxreg/flux.hpp"

namespace fluxreg {

// Value-grid interpolant of a flux on a uniform grid of spacing delta.
// This is the discretized flux that front tracking evolves exactly.
class PiecewiseAffineFlux {
 public:
  PiecewiseAffineFlux(double w_min, double delta, std::vector<double> values);

  double delta() const { return delta_; }
  double w_min() const { return w_min_; }
  double w_max() const { return grid(size() - 1); }
  int size() const { return static_cast<int>(values_.size()); }  // number of grid values
  double grid(int i) const { return w_min_ + delta_ * i; }
  double value(int i) const { return values_[static_cast<std::size_t>(i)]; }
  // Chord slope of cell i, between grid values i and i+1.
  double slope(int i) const { return slopes_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& slopes() const { return slopes_; }

  // Grid index of w; throws OffGrid when w is not a grid value.
  int index_of(double w) const;
  bool on_grid(double w) const;
  double snap(double w) const;  // nearest grid value

  double eval(double w) const;  // piecewise-affine interpolation, clamped slope outside

  // Characteristic speed at grid value w: mean of the two adjacent cell
  // slopes, one-sided at the grid extremes.
  double char_speed(double w) const;

  double min_slope() const;
  double max_slope() const;

 private:
  double w_min_;
  double delta_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

// Interpolant of f on a grid spanning [-M-delta, M+delta].
PiecewiseAffineFlux affine_interpolant(const Flux& f, double M, double delta);

}  // namespace fluxreg

#endif
