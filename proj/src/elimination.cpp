#include "planemap/elimination.hpp"

#include <algorithm>

#include "planemap/error.hpp"

namespace planemap {

std::pair<Poly, int> lead_coeff_in(const Poly& P, Var w) {
  if (P.is_zero()) return {Poly(), -1};
  auto wi = static_cast<std::size_t>(w);
  int d = P.degree(w);
  PolyBuilder b;
  for (const auto& t : P.terms()) {
    auto e = mon_unpack(t.first);
    if (e[wi] != d) continue;
    e[wi] = 0;
    b.add(mon_pack(e), t.second);
  }
  return {std::move(b).build(), d};
}

namespace {

// Pseudo-remainder of A by B in w: scales A by the leading coefficient of B
// once per reduction step, which is all the primitive remainder sequence
// needs.
Poly prem(Poly A, const Poly& B, Var w) {
  auto [lb, db] = lead_coeff_in(B, w);
  check_internal(db >= 1, "prem needs deg >= 1 divisor");
  Poly wpoly = Poly::variable(w);
  while (!A.is_zero()) {
    auto [la, da] = lead_coeff_in(A, w);
    if (da < db) break;
    A = lb * A - la * wpoly.pow(da - db) * B;
  }
  return A;
}

Poly gcd_inner(const Poly& P, const Poly& Q);

Poly content_inner(const Poly& P, Var w) {
  Poly c;
  for (const auto& part : P.coeffs_in(w)) {
    if (part.is_zero()) continue;
    c = c.is_zero() ? part : gcd_inner(c, part);
    if (c.is_constant()) break;
  }
  return c.is_zero() ? Poly() : c;
}

Poly gcd_inner(const Poly& P, const Poly& Q) {
  if (P.is_zero()) return Q;
  if (Q.is_zero()) return P;

  Var w = Var::x;
  bool found = false;
  for (Var cand : {Var::x, Var::y, Var::u, Var::v}) {
    if (P.degree(cand) > 0 || Q.degree(cand) > 0) {
      w = cand;
      found = true;
      break;
    }
  }
  if (!found) return Poly::constant(1);  // both rational constants

  if (P.degree(w) <= 0) return gcd_inner(P, content_inner(Q, w));
  if (Q.degree(w) <= 0) return gcd_inner(content_inner(P, w), Q);

  Poly contP = content_inner(P, w);
  Poly contQ = content_inner(Q, w);
  Poly c = gcd_inner(contP, contQ);
  Poly A = Poly::divexact(P, contP);
  Poly B = Poly::divexact(Q, contQ);
  if (A.degree(w) < B.degree(w)) std::swap(A, B);
  while (!B.is_zero()) {
    Poly R = prem(A, B, w);
    A = std::move(B);
    B = R.is_zero() ? Poly() : Poly::divexact(R, content_inner(R, w));
  }
  return c * A;
}

}  // namespace

Poly content_in(const Poly& P, Var w) { return content_inner(P, w); }

Poly primitive_part_in(const Poly& P, Var w) {
  if (P.is_zero()) return P;
  return Poly::divexact(P, content_inner(P, w));
}

Poly poly_gcd(const Poly& P, const Poly& Q) {
  Poly g = gcd_inner(P, Q);
  return g.normalized();
}

Poly squarefree_part(const Poly& P) {
  if (P.is_zero()) fail(Errc::InvalidParams, "squarefree part of zero");
  if (P.is_constant()) return Poly::constant(1);
  Poly g = P;
  for (Var w : {Var::x, Var::y, Var::u, Var::v}) {
    if (P.degree(w) <= 0) continue;
    g = gcd_inner(g, P.derivative(w));
    if (g.is_constant()) break;
  }
  return Poly::divexact(P, g).normalized();
}

Poly det_bareiss(std::vector<std::vector<Poly>> M) {
  std::size_t n = M.size();
  if (n == 0) return Poly::constant(1);
  int sign = 1;
  Poly prev = Poly::constant(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && M[piv][k].is_zero()) ++piv;
      if (piv == n) return Poly();
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        M[i][j] = Poly::divexact(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev);
      M[i][k] = Poly();
    }
    prev = M[k][k];
  }
  Poly d = M[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

namespace {

std::vector<std::vector<Poly>> sylvester(const Poly& P, const Poly& Q, Var w) {
  auto pc = P.coeffs_in(w);
  auto qc = Q.coeffs_in(w);
  int m = static_cast<int>(pc.size()) - 1;
  int n = static_cast<int>(qc.size()) - 1;
  std::size_t dim = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Poly>> M(dim, std::vector<Poly>(dim));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) M[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + j)] = pc[static_cast<std::size_t>(m - j)];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j)
      M[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + j)] = qc[static_cast<std::size_t>(n - j)];
  return M;
}

}  // namespace

Poly resultant(const Poly& P, const Poly& Q, Var w) {
  int m = P.degree(w);
  int n = Q.degree(w);
  if (m <= 0 && n <= 0)
    fail(Errc::DegenerateElimination,
         std::string("both inputs constant in ") + kVarName[static_cast<std::size_t>(w)]);
  if (m <= 0) return P.pow(n);
  if (n <= 0) return Q.pow(m);
  return det_bareiss(sylvester(P, Q, w));
}

Rat uresultant(const UPoly& A, const UPoly& B) {
  if (A.is_zero() || B.is_zero()) return Rat(0);
  if (A.degree() == 0 && B.degree() == 0) return Rat(1);

  // res(A, B) with the Euclidean remainder sequence:
  // res(A, B) = (-1)^{mn} res(B, A),  res(A, B) = lc(B)^{m-d} res(r, B) ... ;
  // we fold the sign and power bookkeeping into an accumulator.
  UPoly a = A, b = B;
  Rat acc(1);
  bool swapped = false;
  if (a.degree() < b.degree()) {
    if ((a.degree() & 1) && (b.degree() & 1)) acc = -acc;
    std::swap(a, b);
    swapped = true;
  }
  (void)swapped;
  while (b.degree() > 0) {
    UPoly r = UPoly::divmod(a, b).second;
    int m = a.degree(), n = b.degree(), d = r.is_zero() ? -1 : r.degree();
    if (r.is_zero()) return Rat(0);
    // res(a, b) = (-1)^{mn} lc(b)^{m-d} res(b, r)
    if ((m & 1) && (n & 1)) acc = -acc;
    Rat lb = b.leading();
    for (int i = 0; i < m - d; ++i) acc *= lb;
    a = std::move(b);
    b = std::move(r);
  }
  // b is a nonzero constant: res(a, b) = b^{deg a}
  Rat base = b.coeff(0);
  Rat p(1);
  for (int i = 0; i < a.degree(); ++i) p *= base;
  return acc * p;
}

UPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  check_internal(xs.size() == ys.size() && !xs.empty(), "interpolation size mismatch");
  std::size_t n = xs.size();
  // Newton divided differences.
  std::vector<Rat> dd = ys;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  UPoly p = UPoly::constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    UPoly lin(std::vector<Rat>{-xs[i], Rat(1)});
    p = p * lin + UPoly::constant(dd[i]);
  }
  return p;
}

UPoly resultant_bivariate(const Poly& A, const Poly& B, Var elim, Var keep) {
  int m = A.degree(elim), n = B.degree(elim);
  if (m <= 0 && n <= 0)
    fail(Errc::DegenerateElimination, "both inputs constant in the eliminated variable");
  // Degree bound in keep, from the Sylvester matrix shape.
  long bound = static_cast<long>(std::max(n, 0)) * std::max(A.degree(keep), 0) +
               static_cast<long>(std::max(m, 0)) * std::max(B.degree(keep), 0);
  std::vector<Rat> xs, ys;
  long t = 0;
  while (static_cast<long>(xs.size()) < bound + 1) {
    Rat tv(t);
    std::array<const Rat*, 4> sub{nullptr, nullptr, nullptr, nullptr};
    sub[static_cast<std::size_t>(keep)] = &tv;
    Poly As = A.eval_partial(sub);
    Poly Bs = B.eval_partial(sub);
    // The specialization must not drop degree in elim, or the Sylvester
    // determinant at this node would not match the generic one.
    if (As.degree(elim) == m && Bs.degree(elim) == n) {
      xs.push_back(tv);
      ys.push_back(uresultant(As.to_upoly(elim), Bs.to_upoly(elim)));
    }
    t = (t > 0) ? -t : -t + 1;
  }
  return interpolate(xs, ys);
}

}  // namespace planemap
