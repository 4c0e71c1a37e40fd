#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "planemap/rational.hpp"
#include "planemap/upoly.hpp"

namespace planemap {

// The toolkit works in two coordinate planes: the source (x, y) and the
// target (u, v). One sparse polynomial type covers both, plus the mixed
// polynomials that show up inside eliminations.
enum class Var : int { x = 0, y = 1, u = 2, v = 3 };

constexpr std::array<char, 4> kVarName{'x', 'y', 'u', 'v'};

// Monomial exponents packed into one key so that unsigned comparison is
// graded-lex comparison (total degree first, then x > y > u > v). Each
// exponent gets 12 bits; the total degree sits in the top 16.
using MonKey = std::uint64_t;

MonKey mon_pack(const std::array<int, 4>& e);
std::array<int, 4> mon_unpack(MonKey k);
inline int mon_total_degree(MonKey k) { return static_cast<int>(k >> 48); }
bool mon_divides(MonKey a, MonKey b);  // a | b exponent-wise
MonKey mon_mul(MonKey a, MonKey b);
MonKey mon_div(MonKey b, MonKey a);  // requires a | b

// Sparse polynomial over Q in x, y, u, v. Terms are kept sorted by
// descending monomial key with no zero coefficients stored.
class Poly {
public:
  using Term = std::pair<MonKey, Rat>;

  Poly() = default;

  static Poly constant(const Rat& c);
  static Poly variable(Var w);
  static Poly monomial(const std::array<int, 4>& exps, const Rat& c);
  static Poly from_upoly(const UPoly& p, Var w);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  int total_degree() const;           // -1 for zero
  int degree(Var w) const;            // max exponent of w, -1 for zero
  bool uses(Var w) const { return degree(w) > 0; }
  Rat coeff(const std::array<int, 4>& exps) const;
  Rat constant_term() const { return coeff({0, 0, 0, 0}); }
  const Term& leading_term() const;   // graded-lex leading term

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rat& c, const Poly& a);
  bool operator==(const Poly&) const = default;

  Poly pow(int e) const;
  Poly derivative(Var w) const;

  // Coefficients of this viewed as a polynomial in w; index = exponent of w.
  // The returned polynomials do not involve w.
  std::vector<Poly> coeffs_in(Var w) const;
  static Poly assemble_in(Var w, const std::vector<Poly>& cs);

  // Substitute polynomials for variables; null entries keep the variable.
  Poly substitute(const std::array<const Poly*, 4>& repl) const;
  // Substitute rational values for a subset of variables.
  Poly eval_partial(const std::array<const Rat*, 4>& vals) const;
  Rat eval(const std::array<Rat, 4>& vals) const;
  std::complex<double> eval_complex(const std::array<std::complex<double>, 4>& vals) const;

  // Homogeneous part of the given total degree.
  Poly homogeneous_part(int d) const;

  // The polynomial must involve no variable other than w (constants allowed).
  UPoly to_upoly(Var w) const;

  // Divide by the leading (graded-lex) coefficient.
  Poly normalized() const;
  // Integer-content-free version with integer coefficients and positive
  // leading coefficient; used for stable printing of curve equations.
  Poly primitive_integer() const;

  static std::optional<Poly> try_divexact(const Poly& a, const Poly& b);
  static Poly divexact(const Poly& a, const Poly& b);

private:
  std::vector<Term> terms_;  // descending by key
  void normalize_terms();    // sort, combine, drop zeros
  friend class PolyBuilder;
};

// Accumulates terms without intermediate sorting; build() normalizes once.
class PolyBuilder {
public:
  void add(MonKey k, const Rat& c) { terms_.emplace_back(k, c); }
  void add_scaled(const Poly& p, MonKey shift, const Rat& scale);
  Poly build() &&;

private:
  std::vector<Poly::Term> terms_;
};

// Convenience variables.
Poly px();
Poly py();
Poly pu();
Poly pv();

// --- elimination primitives -------------------------------------------------

// Sylvester resultant of P and Q with respect to w, exact. Errors with
// DegenerateElimination when both inputs are constant in w.
Poly resultant(const Poly& P, const Poly& Q, Var w);

// Greatest common divisor, normalized to leading coefficient 1 in graded-lex
// order. gcd(0, 0) = 0.
Poly poly_gcd(const Poly& P, const Poly& Q);

// Product of the distinct irreducible factors of P (requires P != 0),
// normalized like poly_gcd.
Poly squarefree_part(const Poly& P);

}  // namespace planemap
