#include "fluxreg/flux.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fluxreg/errors.hpp"

namespace fluxreg {

const Coeffs Flux::kEmpty = {};

Flux::Flux(Coeffs coefficients) {
  while (coefficients.size() > 1 && coefficients.back() == 0.0) coefficients.pop_back();
  if (coefficients.size() < 2) {
    throw Error(ErrorCode::ValidationError, "flux must be a polynomial of degree >= 1");
  }
  double max_abs = 0.0;
  for (double c : coefficients) max_abs = std::max(max_abs, std::abs(c));
  if (std::abs(coefficients.back()) <= 1e-14 * max_abs) {
    throw Error(ErrorCode::ValidationError,
                "leading flux coefficient is zero relative to the others");
  }
  derivs_.push_back(std::move(coefficients));
  while (derivs_.back().size() > 1) derivs_.push_back(poly_derivative(derivs_.back()));
}

double Flux::deriv(int k, double w) const {
  if (k < 0) throw Error(ErrorCode::ValidationError, "derivative order must be >= 0");
  if (k >= static_cast<int>(derivs_.size())) return 0.0;
  return poly_eval(derivs_[static_cast<std::size_t>(k)], w);
}

const Coeffs& Flux::deriv_coeffs(int k) const {
  if (k < 0) throw Error(ErrorCode::ValidationError, "derivative order must be >= 0");
  if (k >= static_cast<int>(derivs_.size())) return kEmpty;
  return derivs_[static_cast<std::size_t>(k)];
}

double Flux::min_deriv_on(int k, double lo, double hi) const {
  double best = std::min(deriv(k, lo), deriv(k, hi));
  for (double r : poly_real_roots(deriv_coeffs(k + 1), lo, hi, 0.0)) {
    best = std::min(best, deriv(k, r));
  }
  return best;
}

double Flux::max_deriv_on(int k, double lo, double hi) const {
  double best = std::max(deriv(k, lo), deriv(k, hi));
  for (double r : poly_real_roots(deriv_coeffs(k + 1), lo, hi, 0.0)) {
    best = std::max(best, deriv(k, r));
  }
  return best;
}

nlohmann::json Flux::to_json() const {
  return nlohmann::json{{"type", "poly"}, {"coeffs", coefficients()}};
}

Flux Flux::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || j.at("type") != "poly" ||
      !j.contains("coeffs") || !j.at("coeffs").is_array()) {
    throw Error(ErrorCode::ValidationError,
                "flux must be {\"type\":\"poly\",\"coeffs\":[...]}");
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "type" && key != "coeffs") {
      throw Error(ErrorCode::ValidationError, "unknown flux key \"" + key + "\"");
    }
  }
  Coeffs c;
  for (const auto& v : j.at("coeffs")) {
    if (!v.is_number()) throw Error(ErrorCode::ValidationError, "flux coefficients must be numbers");
    c.push_back(v.get<double>());
  }
  return Flux(std::move(c));
}

std::string Flux::to_cli_string() const {
  std::string out = "poly:";
  char buf[40];
  for (std::size_t i = 0; i < coefficients().size(); ++i) {
    if (i) out += ',';
    std::snprintf(buf, sizeof buf, "%.17g", coefficients()[i]);
    out += buf;
  }
  return out;
}

Flux Flux::parse(const std::string& text) {
  const std::string prefix = "poly:";
  if (text.rfind(prefix, 0) != 0) {
    throw Error(ErrorCode::ParseError, "flux string must look like \"poly:c0,c1,...\"");
  }
  Coeffs c;
  std::stringstream ss(text.substr(prefix.size()));
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad flux coefficient \"" + item + "\"");
    }
    if (used != item.size()) {
      throw Error(ErrorCode::ParseError, "bad flux coefficient \"" + item + "\"");
    }
    c.push_back(v);
  }
  return Flux(std::move(c));
}

}  // namespace fluxreg
