#include "fluxreg/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fluxreg/errors.hpp"

namespace fluxreg {

Profile Profile::from_samples(std::vector<double> xs, std::vector<double> vs) {
  if (xs.size() != vs.size()) {
    throw Error(ErrorCode::ValidationError, "profile xs/vs length mismatch");
  }
  if (!std::is_sorted(xs.begin(), xs.end())) {
    throw Error(ErrorCode::ValidationError, "profile positions must be nondecreasing");
  }
  Profile p;
  p.xs = std::move(xs);
  p.vs = std::move(vs);
  return p;
}

Profile Profile::from_step(const StepFunction& u) {
  Profile p;
  p.vs.push_back(u.values.front());
  p.xs.push_back(u.xs.empty() ? 0.0 : u.xs.front());
  for (std::size_t i = 0; i < u.xs.size(); ++i) {
    p.xs.push_back(u.xs[i]);
    p.vs.push_back(u.values[i + 1]);
  }
  return p;
}

Profile Profile::from_step(const StepFunction& u, double x_lo, double x_hi) {
  Profile p;
  p.xs.push_back(x_lo);
  p.vs.push_back(u.value_at(x_lo));
  for (std::size_t i = 0; i < u.xs.size(); ++i) {
    if (u.xs[i] > x_lo && u.xs[i] < x_hi) {
      p.xs.push_back(u.xs[i]);
      p.vs.push_back(u.values[i]);  // left limit at the jump
      p.xs.push_back(u.xs[i]);
      p.vs.push_back(u.values[i + 1]);  // right limit
    }
  }
  p.xs.push_back(x_hi);
  p.vs.push_back(u.value_at(x_hi));
  return p;
}

Profile Profile::mapped(const std::function<double(double)>& fn) const {
  Profile out;
  out.xs = xs;
  out.vs.reserve(vs.size());
  for (double v : vs) out.vs.push_back(fn(v));
  return out;
}

PhiSpec PhiSpec::power(double exponent) {
  if (exponent < 1.0) throw Error(ErrorCode::ValidationError, "power exponent must be >= 1");
  PhiSpec spec;
  spec.phi = [exponent](double h) { return std::pow(std::abs(h), exponent); };
  spec.monotone_verified = true;
  return spec;
}

PhiSpec PhiSpec::custom(std::function<double(double)> fn, double probe_max) {
  PhiSpec spec;
  spec.phi = std::move(fn);
  if (std::abs(spec.phi(0.0)) > 1e-14) {
    throw Error(ErrorCode::ValidationError, "phi(0) must vanish");
  }
  bool monotone = true;
  double prev = 0.0;
  for (int i = 1; i <= 128; ++i) {
    const double v = spec.phi(probe_max * i / 128.0);
    if (v < 0.0) throw Error(ErrorCode::ValidationError, "phi must be nonnegative");
    if (v < prev - 1e-12 * std::max(1.0, prev)) monotone = false;
    prev = std::max(prev, v);
  }
  spec.monotone_verified = monotone;
  return spec;
}

double total_variation(const Profile& p) {
  double tv = 0.0;
  for (std::size_t i = 1; i < p.vs.size(); ++i) tv += std::abs(p.vs[i] - p.vs[i - 1]);
  return tv;
}

namespace {

// Keep first/last samples and direction changes; for nondecreasing phi the
// optimal selection lives on local extrema.
std::vector<double> reduce_to_extrema(const std::vector<double>& vs) {
  std::vector<double> out;
  for (double v : vs) {
    if (!out.empty() && v == out.back()) continue;
    while (out.size() >= 2) {
      const double a = out[out.size() - 2];
      const double b = out.back();
      if ((b - a > 0.0 && v - b > 0.0) || (b - a < 0.0 && v - b < 0.0)) {
        out.pop_back();
      } else {
        break;
      }
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

double tv_phi(const Profile& p, const PhiSpec& phi, const VariationConfig& cfg) {
  std::vector<double> vs = p.vs;
  if (cfg.allow_reduction && phi.monotone_verified) vs = reduce_to_extrema(vs);
  const std::size_t n = vs.size();
  if (n > static_cast<std::size_t>(cfg.size_cap)) {
    throw Error(ErrorCode::SizeCap,
                "profile of size " + std::to_string(n) + " exceeds the DP cap");
  }
  if (n < 2) return 0.0;

  // best[i]: maximal weighted sum over increasing selections ending at i.
  std::vector<double> best(n, 0.0);
  double answer = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    double bi = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      bi = std::max(bi, best[j] + phi.phi(std::abs(vs[i] - vs[j])));
    }
    best[i] = bi;
    answer = std::max(answer, bi);
  }
  return answer;
}

double tv_power(const Profile& p, double exponent, const VariationConfig& cfg) {
  return tv_phi(p, PhiSpec::power(exponent), cfg);
}

double one_sided_lipschitz(const Profile& p, double h_min) {
  if (h_min <= 0.0) throw Error(ErrorCode::ValidationError, "h_min must be positive");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const double dx = p.xs[j] - p.xs[i];
      if (dx < h_min) continue;
      best = std::max(best, (p.vs[j] - p.vs[i]) / dx);
    }
  }
  return best;
}

}  // namespace fluxreg
