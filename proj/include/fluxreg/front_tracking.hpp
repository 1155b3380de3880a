#ifndef FLUXREG_FRONT_TRACKING_HPP
#define FLUXREG_FRONT_TRACKING_HPP

#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "fluxreg/piecewise_affine.hpp"
#include "fluxreg/riemann.hpp"
#include "fluxreg/step_function.hpp"

namespace fluxreg {

// One discontinuity front with an exact affine trajectory.
struct Front {
  int id = -1;
  double birth_time = 0.0;
  double birth_x = 0.0;
  double speed = 0.0;
  double left_value = 0.0;
  double right_value = 0.0;
  WaveKind kind = WaveKind::Shock;
  double death_time = std::numeric_limits<double>::infinity();
  int death_event = -1;

  double position(double t) const { return birth_x + speed * (t - birth_time); }
};

struct InteractionEvent {
  double time = 0.0;
  double x = 0.0;
  std::vector<int> incoming;  // empty for the initial Riemann fans
  std::vector<int> outgoing;
  double ul_ext = 0.0;
  double ur_ext = 0.0;
};

struct EvolveCaps {
  long long max_events = 10'000'000;
};

struct FrontTrackingConfig {
  RiemannConfig riemann;
  EvolveCaps caps;
  double time_group_tol = 1e-12;      // scaled by max(1, T)
  double space_group_tol = 1e-12;     // scaled by the domain width
  double position_match_tol = 1e-12;  // front hit tolerance when sampling, same scaling
};

// Full front-tracking history: every front ever created, every event, and
// per-event snapshots of the living arrangement. Immutable once built.
struct Trajectory {
  PiecewiseAffineFlux flux;
  StepFunction u0;
  double final_time = 0.0;
  double domain_lo = 0.0;
  double domain_hi = 0.0;
  double position_tol = 0.0;

  std::vector<Front> fronts;
  std::vector<InteractionEvent> events;

  // arrangement[k]: alive front ids ordered by position on [starts[k], next start)
  std::vector<double> interval_starts;
  std::vector<std::vector<int>> arrangements;

  int interval_of(double t) const;
  const std::vector<int>& fronts_at(double t) const;

  double sample_one(double t, double x) const;
  std::vector<double> sample(double t, const std::vector<double>& xs) const;

  struct Jump {
    double x = 0.0;
    double left = 0.0;
    double right = 0.0;
    double sigma = 0.0;
    int front = -1;
  };
  std::vector<Jump> discontinuities(double t) const;

  // One-sided limits (u(t,x-), u(t,x+)).
  std::pair<double, double> one_sided_limits(double t, double x) const;

  StepFunction profile(double t) const;  // snapshot with zero-width regions dropped
  double integral(double t) const;
  double total_variation(double t) const;

  double lipschitz_bound() const;  // max |flux slope| over the data range

 private:
  void check_time(double t) const;
};

Trajectory evolve(const StepFunction& u0, const PiecewiseAffineFlux& flux, double T,
                  const FrontTrackingConfig& cfg = {});

// Thrown when the event budget runs out; carries the partial history.
class CapExceededError : public Error {
 public:
  CapExceededError(const std::string& message, std::shared_ptr<Trajectory> partial)
      : Error(ErrorCode::CapExceeded, message), partial_(std::move(partial)) {}
  const std::shared_ptr<Trajectory>& partial() const { return partial_; }

 private:
  std::shared_ptr<Trajectory> partial_;
};

}  // namespace fluxreg

#endif
