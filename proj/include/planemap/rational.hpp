#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace planemap {

// Exact rational coefficients. mpq_class keeps gcd(num, den) = 1 and den >= 1
// as long as values are built through canonicalizing paths, which rat() and
// rat_from_string() guarantee.
using Rat = mpq_class;

Rat rat(long num, long den = 1);

// Accepts "n", "-n" and "n/d" with d > 0. Throws ParseError otherwise.
Rat rat_from_string(const std::string& s);

std::string rat_to_string(const Rat& q);

inline double rat_to_double(const Rat& q) { return q.get_d(); }

inline bool rat_is_zero(const Rat& q) { return sgn(q) == 0; }

bool rat_is_integer(const Rat& q);

// q must fit a signed long.
long rat_to_long(const Rat& q);

// Exact rational n-th root: the unique real root for odd n, the positive one
// for even n. Empty when no rational root exists.
std::optional<Rat> rat_nth_root(const Rat& q, int n);

}  // namespace planemap
