#ifndef FLUXREG_STEP_FUNCTION_HPP
#define FLUXREG_STEP_FUNCTION_HPP

#include <cstdint>
#include <vector>

namespace fluxreg {

// Piecewise-constant spatial profile: k breakpoints and k+1 region values.
struct StepFunction {
  std::vector<double> xs;      // strictly increasing breakpoints
  std::vector<double> values;  // values[i] holds left of xs[i]; values[k] to the right

  static StepFunction constant(double v) { return StepFunction{{}, {v}}; }

  int regions() const { return static_cast<int>(values.size()); }
  // Lower semicontinuous value: min of the one-sided values at breakpoints.
  double value_at(double x) const;
  int region_index(double x) const;  // region containing x, right-closed at breakpoints

  bool compact_support() const;
  double support_lo() const;  // first breakpoint (0 when constant)
  double support_hi() const;

  double integral() const;         // requires compact support
  double total_variation() const;  // sum of jump sizes
  double min_value() const;
  double max_value() const;

  // Drop breakpoints between equal adjacent values.
  void normalize();
};

// Initial datum recipes accepted by the discretizer.
struct InitialDataSpec {
  enum class Type { Zero, Steps, Indicator, Bump, Sawtooth, RandomMonotone, Samples };
  Type type = Type::Zero;

  std::vector<double> xs;      // Steps: breakpoints; Samples: sample positions
  std::vector<double> values;  // Steps: region values; Samples: sampled values

  double a = 0.0, b = 1.0;  // support interval for the built-in shapes
  double h = 1.0;           // amplitude
  int teeth = 3;            // Sawtooth
  int segments = 4;         // RandomMonotone: number of monotone runs
  std::uint64_t seed = 0;   // RandomMonotone

  bool has_domain = false;  // declared domain for the UnboundedSupport check
  double domain_lo = 0.0, domain_hi = 0.0;
};

// Snap a datum onto the value grid of spacing delta. Sampled shapes are
// evaluated at x_resolution cell midpoints.
StepFunction discretize_initial(const InitialDataSpec& spec, double delta,
                                int x_resolution = 1024);

}  // namespace fluxreg

#endif
