#pragma once

#include <utility>
#include <vector>

#include "planemap/poly.hpp"
#include "planemap/upoly.hpp"

namespace planemap {

// Leading coefficient of P viewed as a polynomial in w (zero polynomial
// allowed; returns degree -1 and the zero polynomial).
std::pair<Poly, int> lead_coeff_in(const Poly& P, Var w);

// Content and primitive part with respect to w.
Poly content_in(const Poly& P, Var w);
Poly primitive_part_in(const Poly& P, Var w);

// Resultant of two univariate polynomials over Q (Euclidean remainder
// sequence). res(A, B) = 0 when either input is zero.
Rat uresultant(const UPoly& A, const UPoly& B);

// Newton interpolation through distinct nodes.
UPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

// Determinant of a square matrix of polynomials, fraction-free.
Poly det_bareiss(std::vector<std::vector<Poly>> M);

// Resultant of two bivariate polynomials in the variables {elim, keep},
// eliminating elim, computed by evaluation at keep-values and interpolation.
// Both inputs must involve no other variables.
UPoly resultant_bivariate(const Poly& A, const Poly& B, Var elim, Var keep);

}  // namespace planemap
