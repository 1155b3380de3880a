#include "fluxreg/poly.hpp"

#include <algorithm>
#include <cmath>

namespace fluxreg {

double poly_eval(const Coeffs& c, double w) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * w + *it;
  return acc;
}

Coeffs poly_derivative(const Coeffs& c) {
  if (c.size() <= 1) return {};
  Coeffs d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
  return d;
}

int poly_degree(const Coeffs& c) {
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    if (c[static_cast<std::size_t>(k)] != 0.0) return k;
  }
  return -1;
}

namespace {

// Bisection on a monotone bracket [a, b] with p(a)*p(b) <= 0.
double bisect(const Coeffs& c, double a, double b, double fa) {
  if (fa == 0.0) return a;
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

std::vector<double> poly_real_roots(const Coeffs& c, double lo, double hi,
                                    double value_tol) {
  std::vector<double> roots;
  const int deg = poly_degree(c);
  if (deg <= 0 || lo >= hi) return roots;
  if (deg == 1) {
    const double r = -c[0] / c[1];
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }

  const Coeffs d = poly_derivative(c);
  std::vector<double> nodes = poly_real_roots(d, lo, hi, value_tol);
  nodes.insert(nodes.begin(), lo);
  nodes.push_back(hi);

  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double a = nodes[i];
    const double b = nodes[i + 1];
    if (b <= a) continue;
    const double fa = poly_eval(c, a);
    const double fb = poly_eval(c, b);
    if (std::abs(fa) <= value_tol) {
      roots.push_back(a);
      if ((fa == 0.0 ? 0.0 : fa) * fb < 0.0) roots.push_back(bisect(c, a, b, fa));
      continue;
    }
    if (std::abs(fb) <= value_tol) {
      if (i + 2 == nodes.size()) roots.push_back(b);  // interior nodes handled as next 'a'
      continue;
    }
    if ((fa < 0.0) != (fb < 0.0)) roots.push_back(bisect(c, a, b, fa));
  }

  std::sort(roots.begin(), roots.end());
  const double sep = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  std::vector<double> out;
  for (double r : roots) {
    if (out.empty() || r - out.back() > sep) out.push_back(r);
  }
  return out;
}

}  // namespace fluxreg
