#ifndef FLUXREG_FLUX_ANALYSIS_HPP
#define FLUXREG_FLUX_ANALYSIS_HPP

#include <utility>
#include <vector>

#include "fluxreg/flux.hpp"
#include "fluxreg/piecewise_affine.hpp"

namespace fluxreg {

// Tolerances for the analysis routines. Defaults are the contract; logic
// never hard-codes them.
struct AnalysisConfig {
  double eps_root = 1e-12;     // |f''(w)| <= eps_root * scale accepts an inflection root
  double eps_deriv = 1e-7;     // |f^(k)(w)| > eps_deriv * scale(k) counts as nonzero
  double eps_sep = 1e-9;       // minimal relative separation between inflection points
  int root_grid_cells = 1024;  // sign-scan resolution for f'' = 0
  double gap_tol = 1e-10;      // affine-gap minimization tolerance factor
  int scan_points = 256;       // grid scan resolution for the gap minimum over offsets
  int envelope_samples = 1024; // sampling density for smooth-flux envelopes
  double envelope_tol = 1e-10; // admissibility / one-sidedness tolerance factor
};

// --- degeneracy -------------------------------------------------------

struct DegeneracyReport {
  std::vector<double> inflection_points;  // sorted roots of f'' in the range
  std::vector<int> orders;                // flatness order at each root
  int overall = 1;                        // max over orders, 1 when no inflection
};

// Roots of f'' in [w_lo, w_hi]. Throws DegenerateFlux for affine fluxes.
std::vector<double> inflection_points(const Flux& f, double w_lo, double w_hi,
                                      const AnalysisConfig& cfg = {});

DegeneracyReport degeneracy(const Flux& f, double w_lo, double w_hi,
                            const AnalysisConfig& cfg = {});

// --- nonlinearity functionals ----------------------------------------

// Twice the sup-distance of f restricted to [w1, w2] from affine maps:
// min over lambda of the oscillation of f - lambda*id on [w1, w2].
double nonlinearity_gap(const Flux& f, double w1, double w2,
                        const AnalysisConfig& cfg = {});

// Minimum of the gap over all subintervals of [-M, M] with width h.
double min_nonlinearity_gap(const Flux& f, double M, double h,
                            const AnalysisConfig& cfg = {});

// Sampled gap minimum together with its lower convex envelope and the
// derived variation weight phi(h) = psi(h/2) * h^eps.
struct NonlinearityProfile {
  double M = 0.0;
  double eps = 0.0;
  std::vector<std::pair<double, double>> samples;  // (h, gap minimum)
  std::vector<std::pair<double, double>> psi;      // convex envelope vertices

  double psi_at(double h) const;
  double phi(double h) const;
};

NonlinearityProfile nonlinearity_profile(const Flux& f, double M, int n_samples,
                                         double eps, const AnalysisConfig& cfg = {});

// --- envelopes --------------------------------------------------------

enum class PieceKind { Graph, Chord };

struct EnvelopePiece {
  double w_lo = 0.0;
  double w_hi = 0.0;
  PieceKind kind = PieceKind::Graph;
  double slope = 0.0;  // secant slope of the piece
};

struct EnvelopeDescription {
  double a = 0.0;
  double b = 0.0;
  bool convex = true;
  std::vector<EnvelopePiece> pieces;                // partition of [a, b]
  std::vector<std::pair<double, double>> polyline;  // (w, envelope value)

  double value_at(double w) const;
};

EnvelopeDescription flux_envelope(const Flux& f, double a, double b, bool convex,
                                  const AnalysisConfig& cfg = {});
EnvelopeDescription flux_envelope(const PiecewiseAffineFlux& f, double a, double b,
                                  bool convex, const AnalysisConfig& cfg = {});

}  // namespace fluxreg

#endif
