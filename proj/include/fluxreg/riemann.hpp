#ifndef FLUXREG_RIEMANN_HPP
#define FLUXREG_RIEMANN_HPP

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fluxreg/flux_analysis.hpp"

namespace fluxreg {

enum class WaveKind { Shock, Contact, RarefactionStep };

const char* wave_kind_name(WaveKind kind);

struct Wave {
  double ul = 0.0;   // state on the left of the jump
  double ur = 0.0;   // state on the right
  double sigma = 0.0;
  WaveKind kind = WaveKind::Shock;
};

// Ordered self-similar fan solving the Riemann problem (left, right).
struct WaveFan {
  double left = 0.0;
  double right = 0.0;
  std::vector<Wave> waves;  // speeds strictly increasing

  nlohmann::json to_json() const;
};

struct RiemannConfig {
  AnalysisConfig analysis;
  int rarefaction_steps = 48;   // substeps per graph piece for a smooth flux
  double speed_merge_tol = 1e-13;  // relative tolerance for merging equal-speed waves
  double contact_tol = 1e-9;       // relative tangency tolerance for the contact tag
};

// Entropy-admissible fan via the convex (u_l < u_r) or concave (u_l > u_r)
// envelope of the flux over the jump interval.
WaveFan solve_riemann(const PiecewiseAffineFlux& f, double u_l, double u_r,
                      const RiemannConfig& cfg = {});
WaveFan solve_riemann(const Flux& f, double u_l, double u_r,
                      const RiemannConfig& cfg = {});

// True when the single jump (u_l, u_r) is admissible, i.e. its chord
// coincides with the relevant envelope over the jump interval.
bool is_admissible_jump(const Flux& f, double u_l, double u_r,
                        const RiemannConfig& cfg = {});
bool is_admissible_jump(const PiecewiseAffineFlux& f, double u_l, double u_r,
                        const RiemannConfig& cfg = {});

}  // namespace fluxreg

#endif
