#include "fluxreg/piecewise_affine.hpp"

#include <algorithm>
#include <cmath>

#include "fluxreg/errors.hpp"

namespace fluxreg {

PiecewiseAffineFlux::PiecewiseAffineFlux(double w_min, double delta,
                                         std::vector<double> values)
    : w_min_(w_min), delta_(delta), values_(std::move(values)) {
  if (delta_ <= 0.0) throw Error(ErrorCode::ValidationError, "delta must be positive");
  if (values_.size() < 2) {
    throw Error(ErrorCode::ValidationError, "flux grid needs at least two values");
  }
  slopes_.resize(values_.size() - 1);
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
    slopes_[i] = (values_[i + 1] - values_[i]) / delta_;
  }
}

int PiecewiseAffineFlux::index_of(double w) const {
  const double raw = (w - w_min_) / delta_;
  const int i = static_cast<int>(std::lround(raw));
  if (i < 0 || i >= size() || std::abs(raw - i) > 1e-9) {
    throw Error(ErrorCode::OffGrid, "value " + std::to_string(w) + " is not on the flux grid");
  }
  return i;
}

bool PiecewiseAffineFlux::on_grid(double w) const {
  const double raw = (w - w_min_) / delta_;
  const int i = static_cast<int>(std::lround(raw));
  return i >= 0 && i < size() && std::abs(raw - i) <= 1e-9;
}

double PiecewiseAffineFlux::snap(double w) const {
  const double raw = (w - w_min_) / delta_;
  const int i = std::clamp(static_cast<int>(std::lround(raw)), 0, size() - 1);
  return grid(i);
}

double PiecewiseAffineFlux::eval(double w) const {
  int cell = static_cast<int>(std::floor((w - w_min_) / delta_));
  cell = std::clamp(cell, 0, size() - 2);
  return value(cell) + slope(cell) * (w - grid(cell));
}

double PiecewiseAffineFlux::char_speed(double w) const {
  const int i = index_of(w);
  if (i == 0) return slope(0);
  if (i == size() - 1) return slope(size() - 2);
  return 0.5 * (slope(i - 1) + slope(i));
}

double PiecewiseAffineFlux::min_slope() const {
  return *std::min_element(slopes_.begin(), slopes_.end());
}

double PiecewiseAffineFlux::max_slope() const {
  return *std::max_element(slopes_.begin(), slopes_.end());
}

PiecewiseAffineFlux affine_interpolant(const Flux& f, double M, double delta) {
  if (M <= 0.0) throw Error(ErrorCode::ValidationError, "M must be positive");
  if (delta <= 0.0) throw Error(ErrorCode::ValidationError, "delta must be positive");
  const int n = static_cast<int>(std::ceil(M / delta - 1e-9));
  const int half = n + 1;  // grid spans [-M-delta, M+delta]
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(2 * half + 1));
  for (int k = -half; k <= half; ++k) values.push_back(f(k * delta));
  return PiecewiseAffineFlux(-half * delta, delta, std::move(values));
}

}  // namespace fluxreg
