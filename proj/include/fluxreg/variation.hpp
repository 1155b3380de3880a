#ifndef FLUXREG_VARIATION_HPP
#define FLUXREG_VARIATION_HPP

#include <functional>
#include <vector>

#include "fluxreg/step_function.hpp"

namespace fluxreg {

// Sampled profile. Step functions contribute both one-sided values at each
// jump; ties in x are ordered by index, which realizes the supremum over
// partitions exactly for piecewise-constant functions.
struct Profile {
  std::vector<double> xs;
  std::vector<double> vs;

  static Profile from_samples(std::vector<double> xs, std::vector<double> vs);
  static Profile from_step(const StepFunction& u);
  // Restriction to [x_lo, x_hi] (one-sided values at jumps inside kept).
  static Profile from_step(const StepFunction& u, double x_lo, double x_hi);

  Profile mapped(const std::function<double(double)>& fn) const;
  std::size_t size() const { return vs.size(); }
};

// Nonnegative, nondecreasing weight with phi(0) = 0.
struct PhiSpec {
  std::function<double(double)> phi;
  bool monotone_verified = false;

  static PhiSpec power(double exponent);
  static PhiSpec identity() { return power(1.0); }
  // Verifies the required properties on a probe grid over [0, probe_max];
  // monotone_verified is set accordingly.
  static PhiSpec custom(std::function<double(double)> fn, double probe_max);
};

struct VariationConfig {
  long long size_cap = 20000;      // DP size limit without extremum reduction
  bool allow_reduction = true;     // drop interior points of monotone runs
};

double total_variation(const Profile& p);
double tv_phi(const Profile& p, const PhiSpec& phi, const VariationConfig& cfg = {});
double tv_power(const Profile& p, double exponent, const VariationConfig& cfg = {});

// max over i<j with x_j - x_i >= h_min of (v_j - v_i)/(x_j - x_i);
// -infinity when no pair qualifies.
double one_sided_lipschitz(const Profile& p, double h_min);

}  // namespace fluxreg

#endif
