#include "fluxreg/front_tracking.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>

#include "fluxreg/errors.hpp"

namespace fluxreg {

int Trajectory::interval_of(double t) const {
  check_time(t);
  const auto it = std::upper_bound(interval_starts.begin(), interval_starts.end(), t);
  return static_cast<int>(it - interval_starts.begin()) - 1;
}

const std::vector<int>& Trajectory::fronts_at(double t) const {
  return arrangements[static_cast<std::size_t>(interval_of(t))];
}

void Trajectory::check_time(double t) const {
  if (t < 0.0 || t > final_time) {
    throw Error(ErrorCode::OutOfTimeRange,
                "t = " + std::to_string(t) + " outside [0, " + std::to_string(final_time) + "]");
  }
}

double Trajectory::sample_one(double t, double x) const {
  const std::vector<int>& ids = fronts_at(t);
  if (ids.empty()) return u0.values.front();

  // First front strictly right of x (with the hit tolerance).
  int lo = 0, hi = static_cast<int>(ids.size());
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (fronts[static_cast<std::size_t>(ids[static_cast<std::size_t>(mid)])].position(t) <=
        x + position_tol) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  // Hits: fronts within tolerance of x form a suffix of [0, lo).
  int first_hit = lo;
  for (int i = lo - 1; i >= 0; --i) {
    const Front& fr = fronts[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])];
    if (std::abs(fr.position(t) - x) <= position_tol) {
      first_hit = i;
    } else {
      break;
    }
  }
  if (first_hit < lo) {
    const Front& a = fronts[static_cast<std::size_t>(ids[static_cast<std::size_t>(first_hit)])];
    const Front& b = fronts[static_cast<std::size_t>(ids[static_cast<std::size_t>(lo - 1)])];
    return std::min(a.left_value, b.right_value);  // lower semicontinuous pick
  }
  if (lo == 0) return fronts[static_cast<std::size_t>(ids.front())].left_value;
  return fronts[static_cast<std::size_t>(ids[static_cast<std::size_t>(lo - 1)])].right_value;
}

std::vector<double> Trajectory::sample(double t, const std::vector<double>& xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(sample_one(t, x));
  return out;
}

std::vector<Trajectory::Jump> Trajectory::discontinuities(double t) const {
  std::vector<Jump> out;
  for (int id : fronts_at(t)) {
    const Front& fr = fronts[static_cast<std::size_t>(id)];
    out.push_back({fr.position(t), fr.left_value, fr.right_value, fr.speed, id});
  }
  return out;
}

std::pair<double, double> Trajectory::one_sided_limits(double t, double x) const {
  const std::vector<int>& ids = fronts_at(t);
  if (ids.empty()) return {u0.values.front(), u0.values.front()};
  int lo = 0, hi = static_cast<int>(ids.size());
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (fronts[static_cast<std::size_t>(ids[static_cast<std::size_t>(mid)])].position(t) <=
        x + position_tol) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  int first_hit = lo;
  for (int i = lo - 1; i >= 0; --i) {
    const Front& fr = fronts[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])];
    if (std::abs(fr.position(t) - x) <= position_tol) {
      first_hit = i;
    } else {
      break;
    }
  }
  if (first_hit < lo) {
    const Front& a = fronts[static_cast<std::size_t>(ids[static_cast<std::size_t>(first_hit)])];
    const Front& b = fronts[static_cast<std::size_t>(ids[static_cast<std::size_t>(lo - 1)])];
    return {a.left_value, b.right_value};
  }
  const double v = (lo == 0)
                       ? fronts[static_cast<std::size_t>(ids.front())].left_value
                       : fronts[static_cast<std::size_t>(ids[static_cast<std::size_t>(lo - 1)])]
                             .right_value;
  return {v, v};
}

StepFunction Trajectory::profile(double t) const {
  const std::vector<int>& ids = fronts_at(t);
  StepFunction u;
  if (ids.empty()) {
    u.values.push_back(u0.values.front());
    return u;
  }
  u.values.push_back(fronts[static_cast<std::size_t>(ids.front())].left_value);
  for (int id : ids) {
    const Front& fr = fronts[static_cast<std::size_t>(id)];
    const double x = fr.position(t);
    if (!u.xs.empty() && x <= u.xs.back()) {
      u.values.back() = fr.right_value;  // zero-width region collapses
    } else {
      u.xs.push_back(x);
      u.values.push_back(fr.right_value);
    }
  }
  u.normalize();
  return u;
}

double Trajectory::integral(double t) const { return profile(t).integral(); }

double Trajectory::total_variation(double t) const {
  double tv = 0.0;
  for (int id : fronts_at(t)) {
    const Front& fr = fronts[static_cast<std::size_t>(id)];
    tv += std::abs(fr.right_value - fr.left_value);
  }
  return tv;
}

double Trajectory::lipschitz_bound() const {
  const double lo = u0.min_value();
  const double hi = u0.max_value();
  int ia = flux.index_of(lo);
  int ib = flux.index_of(hi);
  if (ia > 0) --ia;
  if (ib < flux.size() - 1) ++ib;
  double lip = 0.0;
  for (int i = ia; i < ib; ++i) lip = std::max(lip, std::abs(flux.slope(i)));
  return lip;
}

namespace {

struct Candidate {
  double t;
  double x;
  int left;
  int right;
};

struct CandidateOrder {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.t != b.t) return a.t > b.t;
    if (a.x != b.x) return a.x > b.x;
    return a.left > b.left;
  }
};

std::optional<Candidate> collision(const Front& a, const Front& b, double horizon) {
  const double dv = a.speed - b.speed;
  if (dv <= 0.0) return std::nullopt;
  const double t0 = std::max(a.birth_time, b.birth_time);
  const double gap = std::max(0.0, b.position(t0) - a.position(t0));
  const double tc = t0 + gap / dv;
  if (tc > horizon) return std::nullopt;
  return Candidate{tc, a.position(tc), a.id, b.id};
}

}  // namespace

Trajectory evolve(const StepFunction& u0_in, const PiecewiseAffineFlux& flux, double T,
                  const FrontTrackingConfig& cfg) {
  if (T <= 0.0) throw Error(ErrorCode::ValidationError, "T must be positive");
  if (cfg.caps.max_events < 1) {
    throw Error(ErrorCode::ValidationError, "event cap must be at least 1");
  }
  for (double v : u0_in.values) {
    if (!flux.on_grid(v)) {
      throw Error(ErrorCode::NonGridValue,
                  "datum value " + std::to_string(v) + " is not on the flux grid");
    }
  }

  auto traj = std::make_shared<Trajectory>();
  traj->flux = flux;
  traj->u0 = u0_in;
  traj->final_time = T;

  const double lip = traj->lipschitz_bound();
  traj->domain_lo = u0_in.support_lo() - lip * T - 1.0;
  traj->domain_hi = u0_in.support_hi() + lip * T + 1.0;
  const double width = traj->domain_hi - traj->domain_lo;
  traj->position_tol = cfg.position_match_tol * std::max(1.0, width);
  const double eps_t = cfg.time_group_tol * std::max(1.0, T);
  const double eps_x = cfg.space_group_tol * std::max(1.0, width);

  std::vector<Front>& fronts = traj->fronts;
  std::vector<int> next_of, prev_of;
  std::vector<char> alive;
  int head = -1;

  auto new_front = [&](double t, double x, const Wave& w) {
    Front fr;
    fr.id = static_cast<int>(fronts.size());
    fr.birth_time = t;
    fr.birth_x = x;
    fr.speed = w.sigma;
    fr.left_value = w.ul;
    fr.right_value = w.ur;
    fr.kind = w.kind;
    fronts.push_back(fr);
    next_of.push_back(-1);
    prev_of.push_back(-1);
    alive.push_back(1);
    return fr.id;
  };

  auto snapshot = [&](double t) {
    std::vector<int> order;
    for (int id = head; id != -1; id = next_of[static_cast<std::size_t>(id)]) {
      order.push_back(id);
    }
    traj->interval_starts.push_back(t);
    traj->arrangements.push_back(std::move(order));
  };

  std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> queue;
  auto push_candidate = [&](int l, int r) {
    if (l < 0 || r < 0) return;
    const auto c = collision(fronts[static_cast<std::size_t>(l)],
                             fronts[static_cast<std::size_t>(r)], T + eps_t);
    if (c) queue.push(*c);
  };

  // Initial Riemann fans, one event per datum breakpoint.
  int tail = -1;
  for (std::size_t i = 0; i < u0_in.xs.size(); ++i) {
    const WaveFan fan =
        solve_riemann(flux, u0_in.values[i], u0_in.values[i + 1], cfg.riemann);
    InteractionEvent ev;
    ev.time = 0.0;
    ev.x = u0_in.xs[i];
    ev.ul_ext = fan.left;
    ev.ur_ext = fan.right;
    for (const Wave& w : fan.waves) {
      const int id = new_front(0.0, u0_in.xs[i], w);
      ev.outgoing.push_back(id);
      if (tail == -1) {
        head = id;
      } else {
        next_of[static_cast<std::size_t>(tail)] = id;
        prev_of[static_cast<std::size_t>(id)] = tail;
        push_candidate(tail, id);
      }
      tail = id;
    }
    traj->events.push_back(std::move(ev));
    snapshot(0.0);
  }
  if (traj->events.empty()) snapshot(0.0);

  long long processed = static_cast<long long>(traj->events.size());
  double last_time = 0.0;

  while (!queue.empty()) {
    const Candidate top = queue.top();
    if (top.t > T) break;
    queue.pop();
    const auto valid = [&](int l, int r) {
      return alive[static_cast<std::size_t>(l)] && alive[static_cast<std::size_t>(r)] &&
             next_of[static_cast<std::size_t>(l)] == r;
    };
    if (!valid(top.left, top.right)) continue;

    if (++processed > cfg.caps.max_events) {
      traj->final_time = last_time;
      throw CapExceededError(
          "event budget exhausted after " + std::to_string(processed - 1) +
              " events at t = " + std::to_string(last_time),
          traj);
    }

    // Group simultaneous collisions at the same location.
    std::vector<int> members{top.left, top.right};
    for (;;) {
      const int p = prev_of[static_cast<std::size_t>(members.front())];
      if (p < 0) break;
      const auto c = collision(fronts[static_cast<std::size_t>(p)],
                               fronts[static_cast<std::size_t>(members.front())], T + eps_t);
      if (!c || std::abs(c->t - top.t) > eps_t || std::abs(c->x - top.x) > eps_x) break;
      members.insert(members.begin(), p);
    }
    for (;;) {
      const int n = next_of[static_cast<std::size_t>(members.back())];
      if (n < 0) break;
      const auto c = collision(fronts[static_cast<std::size_t>(members.back())],
                               fronts[static_cast<std::size_t>(n)], T + eps_t);
      if (!c || std::abs(c->t - top.t) > eps_t || std::abs(c->x - top.x) > eps_x) break;
      members.push_back(n);
    }

    const int event_index = static_cast<int>(traj->events.size());
    InteractionEvent ev;
    ev.time = top.t;
    ev.x = top.x;
    ev.incoming = members;
    ev.ul_ext = fronts[static_cast<std::size_t>(members.front())].left_value;
    ev.ur_ext = fronts[static_cast<std::size_t>(members.back())].right_value;

    const int left_outer = prev_of[static_cast<std::size_t>(members.front())];
    const int right_outer = next_of[static_cast<std::size_t>(members.back())];
    for (int id : members) {
      alive[static_cast<std::size_t>(id)] = 0;
      fronts[static_cast<std::size_t>(id)].death_time = top.t;
      fronts[static_cast<std::size_t>(id)].death_event = event_index;
    }

    const WaveFan fan = solve_riemann(flux, ev.ul_ext, ev.ur_ext, cfg.riemann);
    int chain_prev = left_outer;
    for (const Wave& w : fan.waves) {
      const int id = new_front(top.t, top.x, w);
      ev.outgoing.push_back(id);
      prev_of[static_cast<std::size_t>(id)] = chain_prev;
      if (chain_prev >= 0) {
        next_of[static_cast<std::size_t>(chain_prev)] = id;
      } else {
        head = id;
      }
      chain_prev = id;
    }
    if (chain_prev >= 0) {
      next_of[static_cast<std::size_t>(chain_prev)] = right_outer;
    } else {
      head = right_outer;
    }
    if (right_outer >= 0) prev_of[static_cast<std::size_t>(right_outer)] = chain_prev;

    if (!ev.outgoing.empty()) {
      push_candidate(left_outer, ev.outgoing.front());
      push_candidate(ev.outgoing.back(), right_outer);
    } else {
      push_candidate(left_outer, right_outer);
    }

    last_time = top.t;
    traj->events.push_back(std::move(ev));
    snapshot(top.t);
  }

  return std::move(*traj);
}

}  // namespace fluxreg
