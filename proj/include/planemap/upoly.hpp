#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "planemap/rational.hpp"

namespace planemap {

// Dense univariate polynomial over Q. coeffs()[i] is the coefficient of t^i.
// The zero polynomial stores no coefficients; otherwise the last stored
// coefficient is nonzero.
class UPoly {
public:
  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static UPoly constant(const Rat& c);
  static UPoly monomial(int exp, const Rat& c);
  static UPoly variable() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  Rat coeff(int i) const;
  Rat leading() const;
  bool is_monic() const { return !is_zero() && leading() == 1; }

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rat& c, const UPoly& a);
  bool operator==(const UPoly&) const = default;

  UPoly pow(int e) const;
  UPoly derivative() const;
  UPoly monic() const;

  Rat eval(const Rat& t) const;
  std::complex<double> eval(const std::complex<double>& t) const;
  // this(inner(t))
  UPoly compose(const UPoly& inner) const;
  // this(t + c)
  UPoly shift(const Rat& c) const;
  // Divide every exponent through by x^s; all exponents < s must carry zero.
  UPoly shr(int s) const;

  // Euclidean division over Q: a = q*b + r with deg r < deg b.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  // Monic gcd; gcd(0, 0) = 0.
  static UPoly gcd(UPoly a, UPoly b);

private:
  std::vector<Rat> coeffs_;
  void trim();
};

// All nontrivial functional decompositions h = phi∘rho with
// deg phi >= 2 and deg rho >= 2, normalized so rho is monic with zero
// constant term, ordered by increasing deg phi. Empty means indecomposable.
std::vector<std::pair<UPoly, UPoly>> up_decompose(const UPoly& h);

// Decomposition attempt at a fixed rho degree (divisor of deg h). rho comes
// out monic with zero constant term; phi keeps the leading coefficient of h.
std::optional<std::pair<UPoly, UPoly>> decompose_at_degree(const UPoly& h, int rho_deg);

// Exact s-th root if one exists. For even s the root with positive leading
// coefficient is returned.
std::optional<UPoly> upoly_nth_root(const UPoly& u, int s);

}  // namespace planemap
