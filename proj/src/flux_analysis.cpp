#include "fluxreg/flux_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "fluxreg/errors.hpp"

namespace fluxreg {

namespace {

double deriv_scale(const Flux& f, int k, double lo, double hi) {
  return std::max({1.0, std::abs(f.min_deriv_on(k, lo, hi)),
                   std::abs(f.max_deriv_on(k, lo, hi))});
}

double bisect_on(const Coeffs& c, double a, double b, double fa) {
  for (int it = 0; it < 120; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid == a || mid == b) break;
    const double fm = poly_eval(c, mid);
    if (fm == 0.0) return mid;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> inflection_points(const Flux& f, double w_lo, double w_hi,
                                      const AnalysisConfig& cfg) {
  if (w_lo >= w_hi) throw Error(ErrorCode::ValidationError, "need w_lo < w_hi");
  const Coeffs& f2 = f.deriv_coeffs(2);
  if (poly_degree(f2) < 0) {
    throw Error(ErrorCode::DegenerateFlux, "f'' vanishes identically on the range");
  }

  const double scale = deriv_scale(f, 2, w_lo, w_hi);
  std::vector<double> roots;

  // Sign-change scan on a uniform grid.
  const int cells = cfg.root_grid_cells;
  double prev_w = w_lo;
  double prev_v = poly_eval(f2, w_lo);
  for (int i = 1; i <= cells; ++i) {
    const double w = w_lo + (w_hi - w_lo) * i / cells;
    const double v = poly_eval(f2, w);
    if (prev_v == 0.0) {
      roots.push_back(prev_w);
    } else if ((prev_v < 0.0) != (v < 0.0) && v != 0.0) {
      roots.push_back(bisect_on(f2, prev_w, w, prev_v));
    }
    prev_w = w;
    prev_v = v;
  }
  if (prev_v == 0.0) roots.push_back(prev_w);

  // Even-multiplicity roots: critical points of f'' where |f''| is tiny.
  for (double r : poly_real_roots(f.deriv_coeffs(3), w_lo, w_hi, 0.0)) {
    if (std::abs(poly_eval(f2, r)) <= cfg.eps_root * scale) roots.push_back(r);
  }

  std::sort(roots.begin(), roots.end());
  const double sep = cfg.eps_sep * std::max(1.0, w_hi - w_lo);
  std::vector<double> out;
  for (double r : roots) {
    if (std::abs(poly_eval(f2, r)) > cfg.eps_root * scale) continue;
    if (out.empty() || r - out.back() > sep) out.push_back(r);
  }
  return out;
}

DegeneracyReport degeneracy(const Flux& f, double w_lo, double w_hi,
                            const AnalysisConfig& cfg) {
  DegeneracyReport report;
  report.inflection_points = inflection_points(f, w_lo, w_hi, cfg);
  report.overall = 1;
  for (double w : report.inflection_points) {
    int order = -1;
    for (int p = 2; p <= f.degree() + 1; ++p) {
      const double scale = deriv_scale(f, p + 1, w_lo, w_hi);
      if (std::abs(f.deriv(p + 1, w)) > cfg.eps_deriv * scale) {
        order = p;
        break;
      }
    }
    if (order < 0) {
      throw Error(ErrorCode::NoFiniteOrder,
                  "all derivatives vanish at inflection point " + std::to_string(w));
    }
    report.orders.push_back(order);
    report.overall = std::max(report.overall, order);
  }
  return report;
}

namespace {

// Oscillation of f - lambda*id on [w1, w2], exact from endpoints and the
// real roots of f' = lambda.
double oscillation_minus_affine(const Flux& f, double w1, double w2, double lambda) {
  double lo = f(w1) - lambda * w1;
  double hi = lo;
  const double g2 = f(w2) - lambda * w2;
  lo = std::min(lo, g2);
  hi = std::max(hi, g2);
  Coeffs fp = f.deriv_coeffs(1);
  fp[0] -= lambda;
  for (double r : poly_real_roots(fp, w1, w2, 0.0)) {
    const double g = f(r) - lambda * r;
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  return hi - lo;
}

}  // namespace

double nonlinearity_gap(const Flux& f, double w1, double w2,
                        const AnalysisConfig& cfg) {
  if (w1 > w2) throw Error(ErrorCode::ValidationError, "need w1 <= w2");
  if (w2 - w1 <= 0.0) return 0.0;

  double lam_lo = f.min_deriv_on(1, w1, w2);
  double lam_hi = f.max_deriv_on(1, w1, w2);
  const double f_osc = f.max_deriv_on(0, w1, w2) - f.min_deriv_on(0, w1, w2);
  const double scale = std::max(1.0, f_osc);
  if (lam_hi - lam_lo <= 0.0) return 0.0;  // affine restriction

  // Golden-section on lambda; the oscillation is convex in lambda.
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lam_lo, b = lam_hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = oscillation_minus_affine(f, w1, w2, c);
  double fd = oscillation_minus_affine(f, w1, w2, d);
  const double lam_tol = cfg.gap_tol * scale / std::max(w2 - w1, 1e-30);
  for (int it = 0; it < 200 && (b - a) > lam_tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = oscillation_minus_affine(f, w1, w2, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = oscillation_minus_affine(f, w1, w2, d);
    }
  }
  return std::min(fc, fd);
}

double min_nonlinearity_gap(const Flux& f, double M, double h,
                            const AnalysisConfig& cfg) {
  if (M <= 0.0) throw Error(ErrorCode::ValidationError, "M must be positive");
  if (h < 0.0 || h > 2.0 * M + 1e-12 * M) {
    throw Error(ErrorCode::ValidationError, "need 0 <= h <= 2M");
  }
  if (h <= 0.0) return 0.0;
  const double w_hi = M - h;
  if (w_hi <= -M) return nonlinearity_gap(f, -M, std::min(M, -M + h), cfg);

  auto g = [&](double w) { return nonlinearity_gap(f, w, w + h, cfg); };

  const int n = cfg.scan_points;
  double best_w = -M;
  double best = g(best_w);
  for (int i = 1; i <= n; ++i) {
    const double w = -M + (w_hi + M) * i / n;
    const double v = g(w);
    if (v < best) {
      best = v;
      best_w = w;
    }
  }

  // Golden-section refinement around the best cell.
  const double cell = (w_hi + M) / n;
  double a = std::max(-M, best_w - cell);
  double b = std::min(w_hi, best_w + cell);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = g(c), fd = g(d);
  for (int it = 0; it < 60 && (b - a) > 1e-10 * std::max(1.0, M); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = g(d);
    }
  }
  return std::min({best, fc, fd});
}

double NonlinearityProfile::psi_at(double h) const {
  if (psi.empty()) return 0.0;
  if (h <= psi.front().first) return psi.front().second;
  if (h >= psi.back().first) return psi.back().second;
  auto it = std::upper_bound(psi.begin(), psi.end(), h,
                             [](double v, const auto& p) { return v < p.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double t = (h - lo.first) / (hi.first - lo.first);
  return lo.second + t * (hi.second - lo.second);
}

double NonlinearityProfile::phi(double h) const {
  if (h <= 0.0) return 0.0;
  return psi_at(0.5 * h) * std::pow(h, eps);
}

NonlinearityProfile nonlinearity_profile(const Flux& f, double M, int n_samples,
                                         double eps, const AnalysisConfig& cfg) {
  if (n_samples < 8) throw Error(ErrorCode::ValidationError, "need n_samples >= 8");
  if (eps <= 0.0 || eps >= 1.0) throw Error(ErrorCode::ValidationError, "need 0 < eps < 1");
  NonlinearityProfile profile;
  profile.M = M;
  profile.eps = eps;
  for (int i = 0; i < n_samples; ++i) {
    const double h = 2.0 * M * i / (n_samples - 1);
    profile.samples.emplace_back(h, min_nonlinearity_gap(f, M, h, cfg));
  }
  // Lower convex envelope of the samples by monotone chain.
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : profile.samples) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      if ((b.second - a.second) * (p.first - b.first) >=
          (p.second - b.second) * (b.first - a.first)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  profile.psi = std::move(hull);
  return profile;
}

// --- envelopes --------------------------------------------------------

namespace {

std::vector<int> lower_hull_indices(const std::vector<std::pair<double, double>>& pts) {
  std::vector<int> hull;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    while (hull.size() >= 2) {
      const auto& a = pts[static_cast<std::size_t>(hull[hull.size() - 2])];
      const auto& b = pts[static_cast<std::size_t>(hull.back())];
      const auto& c = pts[static_cast<std::size_t>(i)];
      if ((b.second - a.second) * (c.first - b.first) >=
          (c.second - b.second) * (b.first - a.first)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  return hull;
}

// Tangency point of a chord anchored at (v, f(v)): root of
// f'(t)(v - t) - f(v) + f(t) nearest to the sampled guess.
double refine_tangency(const Flux& f, double fixed, double guess, double lo, double hi) {
  const Coeffs& fp = f.deriv_coeffs(1);
  Coeffs T(fp.size() + 1, 0.0);
  for (std::size_t k = 0; k < fp.size(); ++k) {
    T[k] += fp[k] * fixed;
    T[k + 1] -= fp[k];
  }
  const Coeffs& fc = f.coefficients();
  for (std::size_t k = 0; k < fc.size(); ++k) T[k] += fc[k];
  T[0] -= f(fixed);

  const double width = hi - lo;
  double best = guess;
  double best_dist = width;
  for (double r : poly_real_roots(T, lo, hi, 0.0)) {
    if (std::abs(r - fixed) <= 1e-9 * std::max(1.0, width)) continue;
    const double dist = std::abs(r - guess);
    if (dist < best_dist) {
      best_dist = dist;
      best = r;
    }
  }
  return best;
}

struct HullPieces {
  std::vector<EnvelopePiece> pieces;
  std::vector<std::pair<double, double>> polyline;
};

// Group hull edges into graph runs (consecutive vertices) and chords.
HullPieces pieces_from_hull(const std::vector<std::pair<double, double>>& pts,
                            const std::vector<int>& hull) {
  HullPieces out;
  auto secant = [&](int i, int j) {
    return (pts[static_cast<std::size_t>(j)].second - pts[static_cast<std::size_t>(i)].second) /
           (pts[static_cast<std::size_t>(j)].first - pts[static_cast<std::size_t>(i)].first);
  };
  std::size_t k = 0;
  while (k + 1 < hull.size()) {
    if (hull[k + 1] == hull[k] + 1) {
      std::size_t end = k + 1;
      while (end + 1 < hull.size() && hull[end + 1] == hull[end] + 1) ++end;
      EnvelopePiece piece;
      piece.w_lo = pts[static_cast<std::size_t>(hull[k])].first;
      piece.w_hi = pts[static_cast<std::size_t>(hull[end])].first;
      piece.kind = PieceKind::Graph;
      piece.slope = secant(hull[k], hull[end]);
      out.pieces.push_back(piece);
      k = end;
    } else {
      EnvelopePiece piece;
      piece.w_lo = pts[static_cast<std::size_t>(hull[k])].first;
      piece.w_hi = pts[static_cast<std::size_t>(hull[k + 1])].first;
      piece.kind = PieceKind::Chord;
      piece.slope = secant(hull[k], hull[k + 1]);
      out.pieces.push_back(piece);
      ++k;
    }
  }
  for (int i : hull) out.polyline.push_back(pts[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace

double EnvelopeDescription::value_at(double w) const {
  if (polyline.empty()) return 0.0;
  if (w <= polyline.front().first) return polyline.front().second;
  if (w >= polyline.back().first) return polyline.back().second;
  auto it = std::upper_bound(polyline.begin(), polyline.end(), w,
                             [](double v, const auto& p) { return v < p.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double t = (w - lo.first) / (hi.first - lo.first);
  return lo.second + t * (hi.second - lo.second);
}

EnvelopeDescription flux_envelope(const Flux& f, double a, double b, bool convex,
                                  const AnalysisConfig& cfg) {
  if (a >= b) throw Error(ErrorCode::ValidationError, "need a < b");

  // Samples enriched with critical and inflection values.
  std::vector<double> ws;
  const int n = cfg.envelope_samples;
  ws.reserve(static_cast<std::size_t>(n) + 8);
  for (int i = 0; i <= n; ++i) ws.push_back(a + (b - a) * i / n);
  for (int k = 1; k <= 2; ++k) {
    for (double r : poly_real_roots(f.deriv_coeffs(k), a, b, 0.0)) ws.push_back(r);
  }
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end(),
                       [&](double x, double y) {
                         return std::abs(x - y) <= 1e-13 * std::max(1.0, b - a);
                       }),
           ws.end());

  const double sign = convex ? 1.0 : -1.0;
  std::vector<std::pair<double, double>> pts;
  pts.reserve(ws.size());
  for (double w : ws) pts.emplace_back(w, sign * f(w));

  HullPieces hp = pieces_from_hull(pts, lower_hull_indices(pts));
  for (EnvelopePiece& piece : hp.pieces) piece.slope *= sign;

  // Refine chord endpoints that sit at interior tangencies.
  for (std::size_t i = 0; i < hp.pieces.size(); ++i) {
    EnvelopePiece& piece = hp.pieces[i];
    if (piece.kind != PieceKind::Chord) continue;
    const bool left_interior = piece.w_lo > a;
    const bool right_interior = piece.w_hi < b;
    double wl = piece.w_lo, wr = piece.w_hi;
    for (int pass = 0; pass < 24 && (left_interior || right_interior); ++pass) {
      const double old_l = wl, old_r = wr;
      if (left_interior) wl = refine_tangency(f, wr, wl, a, b);
      if (right_interior) wr = refine_tangency(f, wl, wr, a, b);
      if (std::abs(wl - old_l) + std::abs(wr - old_r) < 1e-15 * std::max(1.0, b - a)) break;
    }
    piece.w_lo = wl;
    piece.w_hi = wr;
    piece.slope = (f(wr) - f(wl)) / (wr - wl);
    if (i > 0) {
      hp.pieces[i - 1].w_hi = wl;
      hp.pieces[i - 1].slope =
          (f(wl) - f(hp.pieces[i - 1].w_lo)) / (wl - hp.pieces[i - 1].w_lo);
    }
    if (i + 1 < hp.pieces.size()) {
      hp.pieces[i + 1].w_lo = wr;
      hp.pieces[i + 1].slope =
          (f(hp.pieces[i + 1].w_hi) - f(wr)) / (hp.pieces[i + 1].w_hi - wr);
    }
  }

  EnvelopeDescription env;
  env.a = a;
  env.b = b;
  env.convex = convex;
  env.pieces = hp.pieces;
  // Rebuild the polyline against the refined piece boundaries.
  env.polyline.clear();
  for (const EnvelopePiece& piece : env.pieces) {
    if (env.polyline.empty()) env.polyline.emplace_back(piece.w_lo, f(piece.w_lo));
    if (piece.kind == PieceKind::Graph) {
      for (double w : ws) {
        if (w > piece.w_lo && w < piece.w_hi) env.polyline.emplace_back(w, f(w));
      }
    }
    env.polyline.emplace_back(piece.w_hi, f(piece.w_hi));
  }
  return env;
}

EnvelopeDescription flux_envelope(const PiecewiseAffineFlux& f, double a, double b,
                                  bool convex, const AnalysisConfig&) {
  if (a >= b) throw Error(ErrorCode::ValidationError, "need a < b");
  const int ia = f.index_of(a);
  const int ib = f.index_of(b);
  const double sign = convex ? 1.0 : -1.0;
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(ib - ia + 1));
  for (int i = ia; i <= ib; ++i) pts.emplace_back(f.grid(i), sign * f.value(i));

  HullPieces hp = pieces_from_hull(pts, lower_hull_indices(pts));
  EnvelopeDescription env;
  env.a = a;
  env.b = b;
  env.convex = convex;
  env.pieces = std::move(hp.pieces);
  env.polyline = std::move(hp.polyline);
  for (auto& piece : env.pieces) piece.slope *= sign;
  for (auto& p : env.polyline) p.second *= sign;
  return env;
}

}  // namespace fluxreg
