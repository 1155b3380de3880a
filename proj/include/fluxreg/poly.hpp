#ifndef FLUXREG_POLY_HPP
#define FLUXREG_POLY_HPP

#include <vector>

namespace fluxreg {

// Real polynomials as coefficient lists, constant term first.
using Coeffs = std::vector<double>;

double poly_eval(const Coeffs& c, double w);
Coeffs poly_derivative(const Coeffs& c);
int poly_degree(const Coeffs& c);  // index of last structurally nonzero coefficient; -1 for zero poly

// All real roots of c in [lo, hi], sorted and deduplicated.
//
// Works by recursive monotone splitting: the roots of the derivative cut
// [lo, hi] into monotone pieces, each of which is bisected for a sign
// change. Even-multiplicity roots show up as derivative roots where |p|
// falls below value_tol.
std::vector<double> poly_real_roots(const Coeffs& c, double lo, double hi,
                                    double value_tol);

}  // namespace fluxreg

#endif
