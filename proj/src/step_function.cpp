#include "fluxreg/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fluxreg/errors.hpp"

namespace fluxreg {

int StepFunction::region_index(double x) const {
  return static_cast<int>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
}

double StepFunction::value_at(double x) const {
  const auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it != xs.end() && *it == x) {
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    return std::min(values[i], values[i + 1]);
  }
  return values[static_cast<std::size_t>(region_index(x))];
}

bool StepFunction::compact_support() const {
  return values.front() == 0.0 && values.back() == 0.0;
}

double StepFunction::support_lo() const { return xs.empty() ? 0.0 : xs.front(); }
double StepFunction::support_hi() const { return xs.empty() ? 0.0 : xs.back(); }

double StepFunction::integral() const {
  double sum = 0.0;
  for (std::size_t r = 1; r + 1 < values.size(); ++r) {
    sum += values[r] * (xs[r] - xs[r - 1]);
  }
  return sum;
}

double StepFunction::total_variation() const {
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    tv += std::abs(values[i + 1] - values[i]);
  }
  return tv;
}

double StepFunction::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

double StepFunction::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

void StepFunction::normalize() {
  std::vector<double> nx;
  std::vector<double> nv;
  nv.push_back(values[0]);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (values[i + 1] != nv.back()) {
      nx.push_back(xs[i]);
      nv.push_back(values[i + 1]);
    }
  }
  xs = std::move(nx);
  values = std::move(nv);
}

namespace {

double snap_to_grid(double v, double delta) {
  const double s = std::round(v / delta) * delta;
  return s == 0.0 ? 0.0 : s;  // normalize -0.0
}

StepFunction from_sampler(const std::vector<double>& cell_edges,
                          const std::vector<double>& cell_values) {
  StepFunction u;
  u.values.push_back(0.0);
  for (std::size_t i = 0; i < cell_values.size(); ++i) {
    if (cell_values[i] != u.values.back()) {
      u.xs.push_back(cell_edges[i]);
      u.values.push_back(cell_values[i]);
    }
  }
  if (u.values.back() != 0.0) {
    u.xs.push_back(cell_edges.back());
    u.values.push_back(0.0);
  }
  return u;
}

}  // namespace

StepFunction discretize_initial(const InitialDataSpec& spec, double delta,
                                int x_resolution) {
  if (delta <= 0.0) throw Error(ErrorCode::ValidationError, "delta must be positive");
  if (x_resolution < 2) throw Error(ErrorCode::ValidationError, "x_resolution too small");

  StepFunction u;
  switch (spec.type) {
    case InitialDataSpec::Type::Zero:
      u = StepFunction::constant(0.0);
      break;

    case InitialDataSpec::Type::Steps: {
      if (spec.values.size() != spec.xs.size() + 1) {
        throw Error(ErrorCode::ValidationError, "steps need one more value than breakpoints");
      }
      if (!std::is_sorted(spec.xs.begin(), spec.xs.end())) {
        throw Error(ErrorCode::ValidationError, "step breakpoints must be increasing");
      }
      u.xs = spec.xs;
      for (double v : spec.values) u.values.push_back(snap_to_grid(v, delta));
      break;
    }

    case InitialDataSpec::Type::Indicator: {
      if (!(spec.a < spec.b)) throw Error(ErrorCode::ValidationError, "need a < b");
      u.xs = {spec.a, spec.b};
      u.values = {0.0, snap_to_grid(spec.h, delta), 0.0};
      break;
    }

    case InitialDataSpec::Type::Bump:
    case InitialDataSpec::Type::Sawtooth: {
      if (!(spec.a < spec.b)) throw Error(ErrorCode::ValidationError, "need a < b");
      std::vector<double> edges, vals;
      const double width = spec.b - spec.a;
      for (int i = 0; i < x_resolution; ++i) {
        const double x0 = spec.a + width * i / x_resolution;
        const double x1 = spec.a + width * (i + 1) / x_resolution;
        const double xm = 0.5 * (x0 + x1);
        double g = 0.0;
        if (spec.type == InitialDataSpec::Type::Bump) {
          g = spec.h * std::sin(M_PI * (xm - spec.a) / width);
        } else {
          const double phase = (xm - spec.a) / width * spec.teeth;
          g = spec.h * (phase - std::floor(phase));
        }
        edges.push_back(x0);
        vals.push_back(snap_to_grid(g, delta));
      }
      edges.push_back(spec.b);
      u = from_sampler(edges, vals);
      break;
    }

    case InitialDataSpec::Type::RandomMonotone: {
      if (!(spec.a < spec.b)) throw Error(ErrorCode::ValidationError, "need a < b");
      std::mt19937_64 rng(spec.seed);
      const int levels = std::max(1, static_cast<int>(std::floor(spec.h / delta + 0.5)));
      std::uniform_int_distribution<int> level_dist(-levels, levels);
      std::uniform_int_distribution<int> run_len(1, 4);
      std::uniform_real_distribution<double> pos(0.0, 1.0);

      // Monotone runs of grid levels, starting and ending at zero.
      std::vector<int> level_seq{0};
      for (int s = 0; s < spec.segments; ++s) {
        const int target = level_dist(rng);
        const int from = level_seq.back();
        const int dir = (target >= from) ? 1 : -1;
        const int len = std::min(run_len(rng), std::abs(target - from));
        for (int k = 1; k <= std::max(1, len); ++k) {
          const int next = from + dir * k * std::max(1, std::abs(target - from) / std::max(1, len));
          level_seq.push_back(std::clamp(next, -levels, levels));
        }
      }
      level_seq.push_back(0);
      // Collapse repeats, then scatter breakpoints over [a, b].
      std::vector<double> vals{0.0};
      for (std::size_t i = 1; i < level_seq.size(); ++i) {
        const double v = level_seq[i] * delta;
        if (v != vals.back()) vals.push_back(v);
      }
      if (vals.back() != 0.0) vals.push_back(0.0);
      std::vector<double> cuts;
      for (std::size_t i = 0; i + 1 < vals.size(); ++i) cuts.push_back(pos(rng));
      std::sort(cuts.begin(), cuts.end());
      u.values = vals;
      for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
        u.xs.push_back(spec.a + (spec.b - spec.a) * cuts[i]);
      }
      // Merge breakpoints that collided.
      for (std::size_t i = 1; i < u.xs.size(); ++i) {
        if (u.xs[i] <= u.xs[i - 1]) {
          u.xs[i] = u.xs[i - 1] + 1e-9 * (spec.b - spec.a);
        }
      }
      break;
    }

    case InitialDataSpec::Type::Samples: {
      if (spec.xs.size() != spec.values.size() || spec.xs.size() < 2) {
        throw Error(ErrorCode::ValidationError, "samples need matching xs/values, at least 2");
      }
      if (!std::is_sorted(spec.xs.begin(), spec.xs.end())) {
        throw Error(ErrorCode::ValidationError, "sample positions must be increasing");
      }
      std::vector<double> edges, vals;
      for (std::size_t i = 0; i < spec.xs.size(); ++i) {
        const double left_edge =
            (i == 0) ? spec.xs[0]
                     : 0.5 * (spec.xs[i - 1] + spec.xs[i]);
        edges.push_back(left_edge);
        vals.push_back(snap_to_grid(spec.values[i], delta));
      }
      edges.push_back(spec.xs.back());
      u = from_sampler(edges, vals);
      break;
    }
  }

  u.normalize();
  if (spec.has_domain && !u.xs.empty()) {
    if (u.support_lo() < spec.domain_lo || u.support_hi() > spec.domain_hi) {
      throw Error(ErrorCode::UnboundedSupport,
                  "datum support exceeds the declared domain");
    }
  }
  return u;
}

}  // namespace fluxreg
