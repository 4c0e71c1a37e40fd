#pragma once

#include <string>
#include <utility>
#include <vector>

#include "planemap/poly.hpp"
#include "planemap/upoly.hpp"

namespace planemap {

// Textual polynomial grammar:
//
//   poly  := [sign] term { sign term }
//   term  := coeff [ '*' monom ] | monom
//   coeff := int [ '/' posint ]
//   monom := var [ '^' posint ] [ '*' var [ '^' posint ] ]
//
// with var in {x, y} for source polynomials and {u, v} for target ones.
// Whitespace between tokens is insignificant. A polynomial may not mix the
// two planes. Parse failures throw ParseError with the byte offset and the
// expected token set.
Poly parse_poly(const std::string& text);

// Deterministic printer: graded-lex term order, explicit signs, exponent 1
// and unit coefficients omitted. parse_poly(print_poly(P)) == P.
std::string print_poly(const Poly& P);

// Same grammar restricted to a single letter (used for triangular move
// shears, written in x or y, and curve parametrizations written in t).
UPoly parse_upoly(const std::string& text, char var);
std::string print_upoly(const UPoly& p, char var);

}  // namespace planemap
