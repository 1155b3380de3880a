#include "fluxreg/riemann.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "fluxreg/errors.hpp"

namespace fluxreg {

const char* wave_kind_name(WaveKind kind) {
  switch (kind) {
    case WaveKind::Shock: return "shock";
    case WaveKind::Contact: return "contact";
    case WaveKind::RarefactionStep: return "rarefaction-step";
  }
  return "unknown";
}

nlohmann::json WaveFan::to_json() const {
  nlohmann::json waves_json = nlohmann::json::array();
  for (const Wave& w : waves) {
    waves_json.push_back({{"ul", w.ul},
                          {"ur", w.ur},
                          {"sigma", w.sigma},
                          {"kind", wave_kind_name(w.kind)}});
  }
  return nlohmann::json{{"left", left}, {"right", right}, {"waves", waves_json}};
}

namespace {

// Merge adjacent waves whose speeds coincide, keeping speeds strictly
// increasing. The merged jump keeps Rankine-Hugoniot exactly because its
// speed is recomputed from the flux values.
template <typename FluxEval>
void merge_equal_speeds(std::vector<Wave>& waves, const FluxEval& flux,
                        double tol) {
  bool merged = true;
  while (merged) {
    merged = false;
    std::vector<Wave> out;
    for (const Wave& w : waves) {
      if (!out.empty() && w.sigma - out.back().sigma <=
                              tol * std::max(1.0, std::abs(w.sigma))) {
        Wave& prev = out.back();
        prev.ur = w.ur;
        prev.sigma = (flux(prev.ur) - flux(prev.ul)) / (prev.ur - prev.ul);
        if (prev.kind != w.kind) prev.kind = WaveKind::Shock;
        merged = true;
      } else {
        out.push_back(w);
      }
    }
    waves = std::move(out);
  }
}

WaveKind classify_chord(double sigma, double slope_into, double slope_out_of,
                        double tol) {
  const double scale = std::max(1.0, std::abs(sigma));
  if (std::abs(sigma - slope_into) <= tol * scale ||
      std::abs(sigma - slope_out_of) <= tol * scale) {
    return WaveKind::Contact;
  }
  return WaveKind::Shock;
}

}  // namespace

WaveFan solve_riemann(const PiecewiseAffineFlux& f, double u_l, double u_r,
                      const RiemannConfig& cfg) {
  WaveFan fan;
  fan.left = u_l;
  fan.right = u_r;
  if (u_l == u_r) return fan;
  const int il = f.index_of(u_l);
  const int ir = f.index_of(u_r);
  if (il == ir) return fan;

  const bool ascending = u_l < u_r;
  const double lo = f.grid(std::min(il, ir));
  const double hi = f.grid(std::max(il, ir));
  const EnvelopeDescription env = flux_envelope(f, lo, hi, ascending, cfg.analysis);

  auto fval = [&](double w) { return f.value(f.index_of(w)); };
  auto emit = [&](double a, double b, WaveKind kind) {
    Wave w;
    w.ul = a;
    w.ur = b;
    w.sigma = (fval(b) - fval(a)) / (b - a);
    w.kind = kind;
    fan.waves.push_back(w);
  };
  auto chord_kind = [&](const EnvelopePiece& piece) {
    const int a = f.index_of(piece.w_lo);
    const int b = f.index_of(piece.w_hi);
    return classify_chord(piece.slope, f.slope(a), f.slope(b - 1), cfg.contact_tol);
  };

  if (ascending) {
    for (const EnvelopePiece& piece : env.pieces) {
      if (piece.kind == PieceKind::Chord) {
        emit(piece.w_lo, piece.w_hi, chord_kind(piece));
      } else {
        for (int i = f.index_of(piece.w_lo); i < f.index_of(piece.w_hi); ++i) {
          emit(f.grid(i), f.grid(i + 1), WaveKind::RarefactionStep);
        }
      }
    }
  } else {
    for (auto it = env.pieces.rbegin(); it != env.pieces.rend(); ++it) {
      if (it->kind == PieceKind::Chord) {
        emit(it->w_hi, it->w_lo, chord_kind(*it));
      } else {
        for (int i = f.index_of(it->w_hi); i > f.index_of(it->w_lo); --i) {
          emit(f.grid(i), f.grid(i - 1), WaveKind::RarefactionStep);
        }
      }
    }
  }

  merge_equal_speeds(fan.waves, fval, cfg.speed_merge_tol);
  return fan;
}

WaveFan solve_riemann(const Flux& f, double u_l, double u_r,
                      const RiemannConfig& cfg) {
  WaveFan fan;
  fan.left = u_l;
  fan.right = u_r;
  if (u_l == u_r) return fan;

  const bool ascending = u_l < u_r;
  const double lo = std::min(u_l, u_r);
  const double hi = std::max(u_l, u_r);
  const EnvelopeDescription env = flux_envelope(f, lo, hi, ascending, cfg.analysis);

  auto emit = [&](double a, double b, WaveKind kind) {
    Wave w;
    w.ul = a;
    w.ur = b;
    w.sigma = (f(b) - f(a)) / (b - a);
    w.kind = kind;
    fan.waves.push_back(w);
  };
  auto chord_kind = [&](const EnvelopePiece& piece) {
    return classify_chord(piece.slope, f.deriv(1, piece.w_lo), f.deriv(1, piece.w_hi),
                          cfg.contact_tol);
  };
  auto emit_graph = [&](double w_lo, double w_hi, bool downward) {
    const int n = std::max(1, cfg.rarefaction_steps);
    for (int j = 0; j < n; ++j) {
      const double a = w_lo + (w_hi - w_lo) * j / n;
      const double b = w_lo + (w_hi - w_lo) * (j + 1) / n;
      if (downward) {
        emit(w_hi - (a - w_lo), w_hi - (b - w_lo), WaveKind::RarefactionStep);
      } else {
        emit(a, b, WaveKind::RarefactionStep);
      }
    }
  };

  if (ascending) {
    for (const EnvelopePiece& piece : env.pieces) {
      if (piece.kind == PieceKind::Chord) {
        emit(piece.w_lo, piece.w_hi, chord_kind(piece));
      } else {
        emit_graph(piece.w_lo, piece.w_hi, false);
      }
    }
  } else {
    for (auto it = env.pieces.rbegin(); it != env.pieces.rend(); ++it) {
      if (it->kind == PieceKind::Chord) {
        emit(it->w_hi, it->w_lo, chord_kind(*it));
      } else {
        emit_graph(it->w_lo, it->w_hi, true);
      }
    }
  }

  merge_equal_speeds(fan.waves, [&](double w) { return f(w); }, cfg.speed_merge_tol);
  return fan;
}

bool is_admissible_jump(const Flux& f, double u_l, double u_r,
                        const RiemannConfig& cfg) {
  if (u_l == u_r) throw Error(ErrorCode::ValidationError, "need u_l != u_r");
  const double lo = std::min(u_l, u_r);
  const double hi = std::max(u_l, u_r);
  const double sigma = (f(hi) - f(lo)) / (hi - lo);
  const double scale =
      std::max(1.0, f.max_deriv_on(0, lo, hi) - f.min_deriv_on(0, lo, hi));
  const double tol = cfg.analysis.envelope_tol * scale;

  auto gap = [&](double w) { return f(w) - (f(lo) + sigma * (w - lo)); };
  double worst = 0.0;  // most negative gap for convex case / most positive for concave
  Coeffs fp = f.deriv_coeffs(1);
  fp[0] -= sigma;
  for (double r : poly_real_roots(fp, lo, hi, 0.0)) {
    const double g = gap(r);
    if (u_l < u_r) {
      worst = std::min(worst, g);
    } else {
      worst = std::max(worst, g);
    }
  }
  return std::abs(worst) <= tol;
}

bool is_admissible_jump(const PiecewiseAffineFlux& f, double u_l, double u_r,
                        const RiemannConfig& cfg) {
  if (u_l == u_r) throw Error(ErrorCode::ValidationError, "need u_l != u_r");
  const int il = f.index_of(u_l);
  const int ir = f.index_of(u_r);
  const int lo = std::min(il, ir);
  const int hi = std::max(il, ir);
  const double sigma = (f.value(hi) - f.value(lo)) / (f.grid(hi) - f.grid(lo));
  double osc = 0.0;
  for (int i = lo; i <= hi; ++i) {
    osc = std::max(osc, std::abs(f.value(i) - f.value(lo)));
  }
  const double tol = cfg.analysis.envelope_tol * std::max(1.0, osc);
  for (int i = lo + 1; i < hi; ++i) {
    const double g = f.value(i) - (f.value(lo) + sigma * (f.grid(i) - f.grid(lo)));
    if (u_l < u_r ? g < -tol : g > tol) return false;
  }
  return true;
}

}  // namespace fluxreg
