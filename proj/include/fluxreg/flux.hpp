#ifndef FLUXREG_FLUX_HPP
#define FLUXREG_FLUX_HPP

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fluxreg/poly.hpp"

namespace fluxreg {

// Exact polynomial flux with symbolic derivatives of every order.
//
// Derivative coefficient lists are built eagerly at construction, so a
// Flux is immutable afterwards and freely shareable across threads.
class Flux {
 public:
  explicit Flux(Coeffs coefficients);

  double operator()(double w) const { return poly_eval(derivs_[0], w); }

  // k-th derivative at w; any k past the degree evaluates to zero.
  double deriv(int k, double w) const;

  // Coefficient list of the k-th derivative (empty past the degree).
  const Coeffs& deriv_coeffs(int k) const;

  int degree() const { return static_cast<int>(derivs_[0].size()) - 1; }
  const Coeffs& coefficients() const { return derivs_[0]; }

  // Range extrema of the k-th derivative, from endpoints and critical points.
  double min_deriv_on(int k, double lo, double hi) const;
  double max_deriv_on(int k, double lo, double hi) const;

  nlohmann::json to_json() const;
  static Flux from_json(const nlohmann::json& j);

  // CLI string form "poly:c0,c1,...".
  std::string to_cli_string() const;
  static Flux parse(const std::string& text);

  bool operator==(const Flux& other) const { return derivs_[0] == other.derivs_[0]; }

 private:
  std::vector<Coeffs> derivs_;  // derivs_[k] = coefficients of f^(k)
  static const Coeffs kEmpty;
};

}  // namespace fluxreg

#endif
