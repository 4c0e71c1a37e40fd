#include "planemap/rectify.hpp"

#include <algorithm>
#include <cmath>

#include "planemap/elimination.hpp"
#include "planemap/error.hpp"
#include "planemap/roots.hpp"

namespace planemap {

namespace {

std::vector<int> divisors_descending(int n) {
  std::vector<int> ds;
  for (int d = n; d >= 1; --d)
    if (n % d == 0) ds.push_back(d);
  return ds;
}

// --- Newton edge scan -------------------------------------------------------

// Affine move sending a degree-1 polynomial to x exactly.
ElementaryMove linear_normalizer(const Poly& p) {
  Rat a = p.coeff({1, 0, 0, 0});
  Rat b = p.coeff({0, 1, 0, 0});
  Rat c = p.constant_term();
  Affine mu;
  if (!rat_is_zero(a)) {
    mu.a = Rat(1) / a;
    mu.b = -b / a;
    mu.c = 0;
    mu.d = 1;
    mu.e = -c / a;
    mu.f = 0;
  } else {
    check_internal(!rat_is_zero(b), "degree-1 polynomial without linear part");
    mu.a = 0;
    mu.b = 1;
    mu.c = Rat(1) / b;
    mu.d = 0;
    mu.e = 0;
    mu.f = -c / b;
  }
  return mu;
}

// Try an edge form c*(main - λ*other^k)^m, where the substitution
// main <- main + λ*other^k strictly reduces the total degree. main_is_y
// selects the (y - λx^k) pattern, otherwise (x - λy^k).
std::optional<ElementaryMove> edge_move(const Poly& p, int D, bool main_is_y) {
  for (int m : divisors_descending(D)) {
    if (m == D) continue;  // k = 1 is the affine case
    int k = D / m;
    // All support points must sit on or under the edge line.
    bool ok = true;
    for (const auto& t : p.terms()) {
      auto e = mon_unpack(t.first);
      int w = main_is_y ? e[0] + k * e[1] : k * e[0] + e[1];
      if (w > D) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Rat c = main_is_y ? p.coeff({0, m, 0, 0}) : p.coeff({m, 0, 0, 0});
    if (rat_is_zero(c)) continue;
    Rat axis = main_is_y ? p.coeff({D, 0, 0, 0}) : p.coeff({0, D, 0, 0});
    if (rat_is_zero(axis)) continue;
    // c*(-λ)^m is the coefficient on the opposite axis.
    Rat pow_val = axis / c;
    auto root = rat_nth_root(m % 2 == 0 ? pow_val : -pow_val, m);
    if (!root) continue;
    std::vector<Rat> lambdas;
    if (m % 2 == 0) {
      lambdas = {-*root, *root};
    } else {
      lambdas = {*root};
    }
    for (const Rat& lambda : lambdas) {
      if (rat_is_zero(lambda)) continue;
      // Expand c*(main - λ other^k)^m and compare with the edge terms.
      Poly binom = main_is_y
                       ? py() - Poly::monomial({k, 0, 0, 0}, lambda)
                       : px() - Poly::monomial({0, k, 0, 0}, lambda);
      Poly target = c * binom.pow(m);
      PolyBuilder eb;
      for (const auto& t : p.terms()) {
        auto e = mon_unpack(t.first);
        int w = main_is_y ? e[0] + k * e[1] : k * e[0] + e[1];
        if (w == D) eb.add(t.first, t.second);
      }
      Poly edge = std::move(eb).build();
      if (edge == target) {
        UPoly q = UPoly::monomial(k, lambda);
        if (main_is_y) return ElementaryMove(TriangularY{q});
        return ElementaryMove(TriangularX{q});
      }
    }
  }
  return std::nullopt;
}

// Leading form c*(a x + b y)^D with a, b != 0: the shear (x, y - a/b x)
// turns it into a pure power of y.
std::optional<ElementaryMove> mixed_leading_normalizer(const Poly& L, int D) {
  Rat cy = L.coeff({0, D, 0, 0});
  Rat cx = L.coeff({D, 0, 0, 0});
  if (rat_is_zero(cy) || rat_is_zero(cx)) return std::nullopt;
  // L = c (a x + y)^D with c = coeff of y^D; a from the x y^{D-1} term.
  Rat a = L.coeff({1, D - 1, 0, 0}) / (cy * Rat(D));
  if (rat_is_zero(a)) return std::nullopt;
  Poly lin = Poly::monomial({1, 0, 0, 0}, a) + py();
  if (!(cy * lin.pow(D) == L)) return std::nullopt;
  Affine mu;  // (x, y) -> (x, y - a x)
  mu.a = 1;
  mu.b = 0;
  mu.c = -a;
  mu.d = 1;
  return ElementaryMove(mu);
}

}  // namespace

std::optional<ElementaryMove> newton_reducing_move(const Poly& p) {
  check_internal(!p.is_constant(), "newton_reducing_move needs a nonconstant input");
  int D = p.total_degree();
  if (D == 1) return linear_normalizer(p);

  Poly L = p.homogeneous_part(D);
  bool pure_x = L == Poly::monomial({D, 0, 0, 0}, L.coeff({D, 0, 0, 0}));
  bool pure_y = L == Poly::monomial({0, D, 0, 0}, L.coeff({0, D, 0, 0}));

  // A (y - λx^k)^m edge with k >= 2 forces the leading form to be a pure
  // power of x, and symmetrically for the other pattern, so at most one of
  // the scans below can fire. The tie-break (bigger degree drop, then
  // TriangularY) is kept for robustness.
  std::vector<ElementaryMove> candidates;
  if (pure_x) {
    if (auto mv = edge_move(p, D, /*main_is_y=*/true)) candidates.push_back(*mv);
  }
  if (pure_y) {
    if (auto mv = edge_move(p, D, /*main_is_y=*/false)) candidates.push_back(*mv);
  }
  if (!candidates.empty()) {
    if (candidates.size() == 1) return candidates[0];
    int best = -1, best_drop = -1;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      Poly next = apply_to_poly(AutoWord({candidates[i]}), p);
      int drop = D - next.total_degree();
      bool is_y = std::holds_alternative<TriangularY>(candidates[i]);
      if (drop > best_drop || (drop == best_drop && is_y)) {
        best = static_cast<int>(i);
        best_drop = drop;
      }
    }
    return candidates[static_cast<std::size_t>(best)];
  }
  if (!pure_x && !pure_y) return mixed_leading_normalizer(L, D);
  return std::nullopt;
}

RectifyResult rectify_coordinate(const Poly& p) {
  check_internal(!p.is_constant(), "rectify_coordinate needs a nonconstant input");
  check_internal(p.degree(Var::u) <= 0 && p.degree(Var::v) <= 0,
                 "rectify_coordinate works in the source plane");
  Poly cur = p;
  AutoWord word;
  const Poly X = px();
  int cap = 2 * p.total_degree() + 4;
  bool last_was_affine = false;
  for (int iter = 0; iter < cap; ++iter) {
    if (cur == X) {
      check_internal(apply_to_poly(word, p) == X, "rectification word does not verify");
      return Rectified{word};
    }
    auto mv = newton_reducing_move(cur);
    if (!mv)
      return NotRectifiable{cur, "no Newton edge carries an admissible perfect power"};
    Poly next = apply_to_poly(AutoWord({*mv}), cur);
    bool affine = std::holds_alternative<Affine>(*mv);
    if (affine) {
      check_internal(next.total_degree() <= cur.total_degree(),
                     "affine normalization increased the degree");
      check_internal(!last_was_affine, "two affine normalizations in a row");
    } else {
      check_internal(next.total_degree() < cur.total_degree(),
                     "triangular move failed to reduce the degree");
    }
    last_was_affine = affine;
    word.push_inner(*mv);
    cur = std::move(next);
  }
  fail(Errc::Internal, "rectification exceeded its iteration cap");
}

// --- Stein decomposition ----------------------------------------------------

namespace {

struct Line {
  Rat a, b, c, e;  // (x, y) = (a t + b, c t + e)
};

UPoly restrict_to_line(const Poly& h, const Line& L) {
  Poly xt = Poly::monomial({1, 0, 0, 0}, L.a) + Poly::constant(L.b);
  Poly yt = Poly::monomial({1, 0, 0, 0}, L.c) + Poly::constant(L.e);
  std::array<const Poly*, 4> sub{&xt, &yt, nullptr, nullptr};
  // x plays the role of the line parameter t after substitution.
  return h.substitute(sub).to_upoly(Var::x);
}

Line pick_line(const Poly& h) {
  const Poly L = h.homogeneous_part(h.total_degree());
  static const std::array<std::pair<int, int>, 8> dirs{
      {{1, 1}, {1, -1}, {2, 1}, {1, 2}, {1, -2}, {2, -1}, {3, 1}, {1, 3}}};
  static const std::array<std::pair<int, int>, 5> offs{
      {{0, 0}, {1, 0}, {0, 1}, {1, -1}, {2, 1}}};
  for (auto [a, c] : dirs) {
    if (rat_is_zero(L.eval({Rat(a), Rat(c), Rat(0), Rat(0)}))) continue;
    for (auto [b, e] : offs) {
      Line cand{Rat(a), Rat(b), Rat(c), Rat(e)};
      if (restrict_to_line(h, cand).degree() == h.total_degree()) return cand;
    }
  }
  fail(Errc::Internal, "no generic line found for the Stein restriction");
}

// Evaluate a univariate polynomial at a bivariate argument.
Poly upoly_at(const UPoly& f, const Poly& arg) {
  Poly acc;
  for (int i = f.degree(); i >= 0; --i) acc = acc * arg + Poly::constant(f.coeff(i));
  return acc;
}

// Homogeneous s-th root of the top form of h divided by lead, oriented so
// that the root evaluates to 1 along the line direction.
std::optional<Poly> top_form_root(const Poly& h, const Rat& lead, int s, const Line& L) {
  int N = h.total_degree();
  Poly top = h.homogeneous_part(N);
  // Pack the edge coefficients by y-exponent.
  std::vector<Rat> cs(static_cast<std::size_t>(N) + 1, Rat(0));
  for (const auto& t : top.terms()) {
    auto e = mon_unpack(t.first);
    cs[static_cast<std::size_t>(e[1])] = t.second / lead;
  }
  auto root = upoly_nth_root(UPoly(std::move(cs)), s);
  if (!root) return std::nullopt;
  int m = N / s;
  PolyBuilder b;
  for (int j = 0; j <= root->degree(); ++j) {
    Rat cj = root->coeff(j);
    if (rat_is_zero(cj)) continue;
    if (j > m) return std::nullopt;
    b.add(mon_pack({m - j, j, 0, 0}), cj);
  }
  Poly r_top = std::move(b).build();
  Rat along = r_top.eval({L.a, L.c, Rat(0), Rat(0)});
  if (along == 1) return r_top;
  if (along == -1 && s % 2 == 0) return -r_top;
  return std::nullopt;
}

// Recover a bivariate r with phi(r) = h, degree r = r_deg, top-down by
// homogeneous layers. The linearized top layer divides by s*lc(phi)*r_top^{s-1}.
std::optional<Poly> recover_r(const Poly& h, const UPoly& phi, int r_deg, const Line& L) {
  int N = h.total_degree();
  int s = phi.degree();
  Rat lead = phi.leading();
  auto r_top = top_form_root(h, lead, s, L);
  if (!r_top) return std::nullopt;
  Poly denom = (Rat(s) * lead) * r_top->pow(s - 1);
  Poly r = *r_top;
  for (int k = 1; k <= r_deg; ++k) {
    Poly delta = h - upoly_at(phi, r);
    if (delta.is_zero()) break;
    int dtop = delta.total_degree();
    if (dtop > N - k) return std::nullopt;
    if (dtop < N - k) continue;
    auto piece = Poly::try_divexact(delta.homogeneous_part(dtop), denom);
    if (!piece) return std::nullopt;
    r += *piece;
  }
  if (!(upoly_at(phi, r) == h)) return std::nullopt;
  return r;
}

// Numeric screen for the generic-value pick: common zeros of (r_x, r_y).
std::vector<std::pair<CPoint, CPoint>> critical_points_numeric(const Poly& rx,
                                                               const Poly& ry) {
  std::vector<std::pair<CPoint, CPoint>> pts;
  auto add_pairs = [&](std::complex<double> x0) {
    // y-roots shared by both partials at x = x0.
    auto spec = [&](const Poly& g) {
      std::vector<std::complex<double>> cs(
          static_cast<std::size_t>(std::max(g.degree(Var::y), 0)) + 1, 0.0);
      for (const auto& t : g.terms()) {
        auto e = mon_unpack(t.first);
        std::complex<double> xv(1.0, 0.0);
        for (int i = 0; i < e[0]; ++i) xv *= x0;
        cs[static_cast<std::size_t>(e[1])] += rat_to_double(t.second) * xv;
      }
      return cs;
    };
    auto csx = spec(rx);
    auto csy = spec(ry);
    auto poly_deg = [](const std::vector<std::complex<double>>& cs) {
      int d = -1;
      for (std::size_t i = 0; i < cs.size(); ++i)
        if (std::abs(cs[i]) > 1e-12) d = static_cast<int>(i);
      return d;
    };
    int dx = poly_deg(csx), dy = poly_deg(csy);
    auto eval_cs = [](const std::vector<std::complex<double>>& cs,
                      std::complex<double> z) {
      std::complex<double> acc(0.0, 0.0);
      for (std::size_t i = cs.size(); i-- > 0;) acc = acc * z + cs[i];
      return acc;
    };
    if (dx >= 1) {
      csx.resize(static_cast<std::size_t>(dx) + 1);
      for (const auto& root : roots_of_doubles(csx).roots)
        if (std::abs(eval_cs(csy, root.c())) < 1e-6)
          pts.emplace_back(CPoint(x0), root);
    } else if (dy >= 1 && std::abs(eval_cs(csx, 0.0)) < 1e-9) {
      csy.resize(static_cast<std::size_t>(dy) + 1);
      for (const auto& root : roots_of_doubles(csy).roots)
        pts.emplace_back(CPoint(x0), root);
    } else if (dx == 0 || dy == 0) {
      // no common zero over this x0
    }
  };

  if (rx.degree(Var::y) <= 0 && ry.degree(Var::y) <= 0) {
    // Both partials depend on x alone; critical set is a union of lines
    // unless empty, and any gamma screen is done on values along them.
    UPoly g = UPoly::gcd(rx.to_upoly(Var::x), ry.to_upoly(Var::x));
    if (g.degree() >= 1)
      for (const auto& root : up_roots_numeric(g).roots)
        pts.emplace_back(root, CPoint(0.0, 0.0));
    return pts;
  }

  // Eliminate y, then backsolve.
  Poly res;
  if (rx.degree(Var::y) > 0 && ry.degree(Var::y) > 0)
    res = resultant(rx, ry, Var::y);
  else if (rx.degree(Var::y) > 0)
    res = ry;  // ry is a polynomial in x alone
  else
    res = rx;
  if (res.is_zero()) return pts;  // shared component; caller treats as bad
  if (res.degree(Var::x) >= 1)
    for (const auto& x0 : up_roots_numeric(res.to_upoly(Var::x)).roots)
      add_pairs(x0.c());
  return pts;
}

Rat choose_generic_value(const Poly& r) {
  Poly rx = r.derivative(Var::x);
  Poly ry = r.derivative(Var::y);
  std::vector<std::pair<CPoint, CPoint>> crit;
  bool shared_component = false;
  if (!rx.is_zero() || !ry.is_zero()) {
    if (rx.is_zero() || ry.is_zero()) {
      // r depends on one variable only; squarefreeness is the whole check.
    } else if (rx.is_constant() || ry.is_constant()) {
      // no critical points at all
    } else {
      crit = critical_points_numeric(rx, ry);
      if (rx.degree(Var::y) > 0 && ry.degree(Var::y) > 0 &&
          resultant(rx, ry, Var::y).is_zero())
        shared_component = true;
    }
  }
  for (long step = 0; step <= 40; ++step) {
    long g = (step % 2 == 0) ? step / 2 : -(step / 2 + 1);
    Rat gamma(g);
    Poly rg = r - Poly::constant(gamma);
    if (rg.is_constant()) continue;
    if (!(squarefree_part(rg) == rg.normalized())) continue;
    if (shared_component) continue;  // keep trying; the loop below never clears it
    bool hits_critical = false;
    for (const auto& [cx, cy] : crit) {
      auto val = rg.eval_complex({cx.c(), cy.c(), 0.0, 0.0});
      if (std::abs(val) < 1e-6) {
        hits_critical = true;
        break;
      }
    }
    if (!hits_critical) return gamma;
  }
  fail(Errc::Internal, "no generic value found for the Stein factor");
}

}  // namespace

SteinData stein_decompose(const Poly& h) {
  if (h.is_constant()) fail(Errc::InvalidParams, "stein_decompose needs a nonconstant input");
  check_internal(h.degree(Var::u) <= 0 && h.degree(Var::v) <= 0,
                 "stein_decompose works in the source plane");
  int N = h.total_degree();
  Line line = pick_line(h);
  UPoly H = restrict_to_line(h, line);

  UPoly phi;
  Poly r;
  bool found = false;
  for (int s : divisors_descending(N)) {
    if (s < 2) break;
    auto cand = decompose_at_degree(H, N / s);
    if (!cand) continue;
    auto rec = recover_r(h, cand->first, N / s, line);
    if (!rec) continue;
    phi = cand->first;
    r = *rec;
    found = true;
    break;
  }
  if (!found) {
    phi = UPoly::variable();
    r = h;
  }

  SteinData out;
  out.phi_monic = true;
  if (!phi.is_monic()) {
    if (auto mu = rat_nth_root(phi.leading(), phi.degree())) {
      // phi(t) <- phi(t/mu), r <- mu * r keeps the composition intact.
      std::vector<Rat> cs(static_cast<std::size_t>(phi.degree()) + 1, Rat(0));
      Rat p(1);
      for (int j = 0; j <= phi.degree(); ++j) {
        cs[static_cast<std::size_t>(j)] = phi.coeff(j) / p;
        p *= *mu;
      }
      phi = UPoly(std::move(cs));
      r = *mu * r;
    } else {
      out.phi_monic = false;
    }
  }
  check_internal(upoly_at(phi, r) == h, "Stein recomposition failed");
  out.phi = phi;
  out.r = r;
  out.generic_value = choose_generic_value(r);
  return out;
}

Lemma1Certificate lemma1_normalize(const Poly& h) {
  if (h.is_constant()) fail(Errc::InvalidParams, "lemma1_normalize needs a nonconstant input");
  SteinData stein = stein_decompose(h);
  Poly shifted = stein.r - Poly::constant(stein.generic_value);
  RectifyResult res = rectify_coordinate(shifted);
  if (const auto* bad = std::get_if<NotRectifiable>(&res))
    throw Error(Errc::RectifyFailed,
                "Stein factor minus its generic value is not rectifiable: " + bad->reason);
  Lemma1Certificate cert;
  cert.alpha = std::get<Rectified>(res).alpha;
  cert.phi_hat = stein.phi.shift(stein.generic_value);
  check_internal(apply_to_poly(cert.alpha, h) == Poly::from_upoly(cert.phi_hat, Var::x),
                 "Lemma 1 certificate does not verify");
  return cert;
}

Poly to_source_plane(const Poly& P) {
  check_internal(P.degree(Var::x) <= 0 && P.degree(Var::y) <= 0,
                 "polynomial already uses source variables");
  Poly X = px(), Y = py();
  std::array<const Poly*, 4> sub{nullptr, nullptr, &X, &Y};
  return P.substitute(sub);
}

Poly to_target_plane(const Poly& P) {
  check_internal(P.degree(Var::u) <= 0 && P.degree(Var::v) <= 0,
                 "polynomial already uses target variables");
  Poly U = pu(), V = pv();
  std::array<const Poly*, 4> sub{&U, &V, nullptr, nullptr};
  return P.substitute(sub);
}

}  // namespace planemap
