#include "planemap/analyze.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "planemap/elimination.hpp"
#include "planemap/error.hpp"
#include "planemap/rectify.hpp"

namespace planemap {

namespace {

using cdouble = std::complex<double>;
using cldouble = std::complex<long double>;

constexpr double kAcceptResidual = 1e-6;

// --- numeric map evaluation ---------------------------------------------------

struct MapEval {
  const PolyMap& f;
  Poly f1x, f1y, f2x, f2y;

  explicit MapEval(const PolyMap& m)
      : f(m),
        f1x(m.f1.derivative(Var::x)),
        f1y(m.f1.derivative(Var::y)),
        f2x(m.f2.derivative(Var::x)),
        f2y(m.f2.derivative(Var::y)) {}

  std::pair<cdouble, cdouble> value(cdouble x, cdouble y) const {
    std::array<cdouble, 4> at{x, y, 0.0, 0.0};
    return {f.f1.eval_complex(at), f.f2.eval_complex(at)};
  }

  // Newton-polish a candidate fiber point of f = (a, b). Returns the final
  // residual (max of the two equation residuals).
  double polish(cdouble& x, cdouble& y, cdouble a, cdouble b) const {
    for (int it = 0; it < 16; ++it) {
      std::array<cdouble, 4> at{x, y, 0.0, 0.0};
      cdouble F1 = f.f1.eval_complex(at) - a;
      cdouble F2 = f.f2.eval_complex(at) - b;
      cdouble j11 = f1x.eval_complex(at), j12 = f1y.eval_complex(at);
      cdouble j21 = f2x.eval_complex(at), j22 = f2y.eval_complex(at);
      cdouble det = j11 * j22 - j12 * j21;
      if (std::abs(det) < 1e-14) break;
      cdouble dx = (F1 * j22 - F2 * j12) / det;
      cdouble dy = (j11 * F2 - j21 * F1) / det;
      if (!std::isfinite(std::abs(dx)) || !std::isfinite(std::abs(dy))) break;
      x -= dx;
      y -= dy;
      if (std::abs(dx) + std::abs(dy) < 1e-14 * (1.0 + std::abs(x) + std::abs(y))) break;
    }
    auto [v1, v2] = value(x, y);
    return std::max(std::abs(v1 - cdouble(a)), std::abs(v2 - cdouble(b)));
  }
};

double target_scale(cdouble a, cdouble b) {
  return std::max({1.0, std::abs(a), std::abs(b)});
}

// --- eliminants ---------------------------------------------------------------

struct ElimPlan {
  Var elim, keep;
  int dim;      // Sylvester dimension
  long bound;   // degree bound of the eliminant in keep
};

ElimPlan plan_elimination(const PolyMap& f) {
  int dy = std::max(f.f1.degree(Var::y), 0) + std::max(f.f2.degree(Var::y), 0);
  int dx = std::max(f.f1.degree(Var::x), 0) + std::max(f.f2.degree(Var::x), 0);
  auto bound_for = [&](Var elim, Var keep) {
    return static_cast<long>(std::max(f.f2.degree(elim), 0)) *
               std::max(f.f1.degree(keep), 0) +
           static_cast<long>(std::max(f.f1.degree(elim), 0)) *
               std::max(f.f2.degree(keep), 0);
  };
  if (dy <= dx) return {Var::y, Var::x, dy, bound_for(Var::y, Var::x)};
  return {Var::x, Var::y, dx, bound_for(Var::x, Var::y)};
}

bool exact_route_ok(const ElimPlan& p, const AnalyzeOptions& opts) {
  return p.dim <= opts.exact_dim_cap && p.bound + 1 <= opts.exact_nodes_cap;
}

// Numeric eliminant: values of the Sylvester determinant of
// (f1 - a, f2 - b) in `elim` at nodes on a circle in `keep`, then an inverse
// DFT for the coefficients. Returns empty on conditioning failure.
std::vector<cdouble> numeric_eliminant(const PolyMap& f, cdouble a, cdouble b,
                                       const ElimPlan& plan) {
  auto rows1 = f.f1.coeffs_in(plan.elim);
  auto rows2 = f.f2.coeffs_in(plan.elim);
  int m = static_cast<int>(rows1.size()) - 1;
  int n = static_cast<int>(rows2.size()) - 1;
  if (m <= 0 && n <= 0) return {};
  long N = plan.bound + 1;
  if (N < 2) N = 2;

  auto entry_at = [&](const std::vector<Poly>& rows, int idx, cdouble shift,
                      cdouble node) -> cdouble {
    std::array<cdouble, 4> at{0.0, 0.0, 0.0, 0.0};
    at[static_cast<std::size_t>(plan.keep)] = node;
    cdouble val = rows[static_cast<std::size_t>(idx)].eval_complex(at);
    if (idx == 0) val -= shift;
    return val;
  };

  for (double radius : {1.0, 2.0, 0.5, 3.0}) {
    std::vector<cdouble> dets(static_cast<std::size_t>(N));
    bool bad = false;
    for (long k = 0; k < N && !bad; ++k) {
      double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(N);
      cdouble node = std::polar(radius, ang);
      int dim = m + n;
      Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
      for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j)
          M(r, r + j) = entry_at(rows1, m - j, a, node);
      for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j)
          M(n + r, r + j) = entry_at(rows2, n - j, b, node);
      cdouble d = Eigen::PartialPivLU<Eigen::MatrixXcd>(M).determinant();
      if (!std::isfinite(std::abs(d))) bad = true;
      dets[static_cast<std::size_t>(k)] = d;
    }
    if (bad) continue;
    // Inverse DFT, unscaled by the radius power per coefficient.
    std::vector<cdouble> coeffs(static_cast<std::size_t>(N));
    double maxc = 0.0;
    for (long j = 0; j < N; ++j) {
      cdouble acc(0.0, 0.0);
      for (long k = 0; k < N; ++k) {
        double ang = -2.0 * M_PI * static_cast<double>(j * k % N) / static_cast<double>(N);
        acc += dets[static_cast<std::size_t>(k)] * std::polar(1.0, ang);
      }
      acc /= static_cast<double>(N);
      acc /= std::pow(radius, static_cast<double>(j));
      coeffs[static_cast<std::size_t>(j)] = acc;
      maxc = std::max(maxc, std::abs(acc));
    }
    if (!(maxc > 0.0) || !std::isfinite(maxc)) continue;
    // Consistency check at a fresh node.
    cdouble probe(0.7, 0.31);
    cdouble direct;
    {
      int dim = m + n;
      Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
      for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) M(r, r + j) = entry_at(rows1, m - j, a, probe);
      for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) M(n + r, r + j) = entry_at(rows2, n - j, b, probe);
      direct = Eigen::PartialPivLU<Eigen::MatrixXcd>(M).determinant();
    }
    cdouble synth(0.0, 0.0);
    for (long j = N - 1; j >= 0; --j) synth = synth * probe + coeffs[static_cast<std::size_t>(j)];
    if (std::abs(synth - direct) > 1e-6 * std::max(1.0, std::abs(direct))) continue;
    return coeffs;
  }
  return {};
}

// Back-solve the eliminated coordinate over each root of the eliminant, then
// polish on the full system and filter by residual.
void backsolve_roots(const MapEval& ev, const ElimPlan& plan,
                     const std::vector<CPoint>& keep_roots, cdouble a, cdouble b,
                     FiberSolution& out) {
  double scale = target_scale(a, b);
  auto spec_roots = [&](const Poly& g, cdouble shift, cdouble kv) {
    auto cs_polys = g.coeffs_in(plan.elim);
    std::vector<cdouble> cs(cs_polys.size());
    for (std::size_t i = 0; i < cs_polys.size(); ++i) {
      std::array<cdouble, 4> at{0.0, 0.0, 0.0, 0.0};
      at[static_cast<std::size_t>(plan.keep)] = kv;
      cs[i] = cs_polys[i].eval_complex(at);
    }
    cs[0] -= shift;
    int deg = -1;
    double top = 0.0;
    for (std::size_t i = 0; i < cs.size(); ++i) top = std::max(top, std::abs(cs[i]));
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (std::abs(cs[i]) > 1e-9 * std::max(1.0, top)) deg = static_cast<int>(i);
    std::vector<cdouble> trimmed;
    if (deg >= 1) trimmed.assign(cs.begin(), cs.begin() + deg + 1);
    return trimmed;
  };
  for (const auto& kr : keep_roots) {
    cdouble kv = kr.c();
    auto c1 = spec_roots(ev.f.f1, a, kv);
    auto c2 = spec_roots(ev.f.f2, b, kv);
    const auto& use = !c1.empty() ? c1 : c2;
    if (use.empty()) continue;
    RootSet rs;
    try {
      rs = roots_of_doubles(use);
    } catch (const Error&) {
      continue;
    }
    for (const auto& er : rs.roots) {
      cdouble x = plan.keep == Var::x ? kv : er.c();
      cdouble y = plan.keep == Var::x ? er.c() : kv;
      double res = ev.polish(x, y, a, b);
      if (res < kAcceptResidual * scale) {
        if (plan.keep == Var::x)
          out.points.emplace_back(CPoint(x), CPoint(y));
        else
          out.points.emplace_back(CPoint(x), CPoint(y));
        out.residual_bound = std::max(out.residual_bound, res);
      }
    }
  }
  out.count_distinct = count_distinct_pairs(out.points);
}

// gcd(f1 - a, f2 - b) constant? Fast specialized screen first, exact PRS only
// when the screen is suspicious.
bool fiber_contains_curve(const PolyMap& f, const Rat& a, const Rat& b) {
  Poly A = f.f1 - Poly::constant(a);
  Poly B = f.f2 - Poly::constant(b);
  auto suspicious = [&](Var fix, long num, long den) {
    Rat val = rat(num, den);
    std::array<const Rat*, 4> sub{nullptr, nullptr, nullptr, nullptr};
    sub[static_cast<std::size_t>(fix)] = &val;
    Poly As = A.eval_partial(sub);
    Poly Bs = B.eval_partial(sub);
    Var other = fix == Var::x ? Var::y : Var::x;
    if (As.is_constant() || Bs.is_constant())
      return As.is_zero() || Bs.is_zero();
    UPoly g = UPoly::gcd(As.to_upoly(other), Bs.to_upoly(other));
    return g.degree() >= 1;
  };
  bool sus = (suspicious(Var::x, 101, 7) && suspicious(Var::x, -89, 5)) ||
             (suspicious(Var::y, 103, 9) && suspicious(Var::y, -91, 4));
  if (!sus) return false;
  Poly g = poly_gcd(A, B);
  return !g.is_constant();
}

std::vector<CPoint> eliminant_roots(const PolyMap& f, const Rat& a, const Rat& b,
                                    const ElimPlan& plan, const AnalyzeOptions& opts,
                                    bool& exact_used) {
  std::vector<CPoint> out;
  if (exact_route_ok(plan, opts)) {
    exact_used = true;
    Poly A = f.f1 - Poly::constant(a);
    Poly B = f.f2 - Poly::constant(b);
    UPoly R = resultant_bivariate(A, B, plan.elim, plan.keep);
    if (R.is_zero())
      fail(Errc::Internal, "vanishing eliminant for a finite fiber");
    if (R.degree() >= 1)
      for (const auto& r : up_roots_numeric(R).roots) out.push_back(r);
    return out;
  }
  exact_used = false;
  auto coeffs = numeric_eliminant(f, cdouble(rat_to_double(a), 0.0),
                                  cdouble(rat_to_double(b), 0.0), plan);
  if (coeffs.empty()) return out;
  double maxc = 0.0;
  for (const auto& c : coeffs) maxc = std::max(maxc, std::abs(c));
  int deg = -1;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (std::abs(coeffs[i]) > 1e-10 * maxc) deg = static_cast<int>(i);
  if (deg < 1) return out;
  coeffs.resize(static_cast<std::size_t>(deg) + 1);
  try {
    for (const auto& r : roots_of_doubles(coeffs).roots)
      if (std::abs(r.c()) < 1e8) out.push_back(r);
  } catch (const Error&) {
  }
  return out;
}

}  // namespace

// --- public map operations ----------------------------------------------------

PolyMap apply_to_map(const AutoWord& pre, const PolyMap& f, const AutoWord& post) {
  auto [p1, p2] = pre.components();
  std::array<const Poly*, 4> presub{&p1, &p2, nullptr, nullptr};
  Poly g1 = pre.is_identity_word() ? f.f1 : f.f1.substitute(presub);
  Poly g2 = pre.is_identity_word() ? f.f2 : f.f2.substitute(presub);
  if (post.is_identity_word()) return PolyMap{g1, g2, std::nullopt};
  auto [q1, q2] = post.components();
  std::array<const Poly*, 4> postsub{&g1, &g2, nullptr, nullptr};
  return PolyMap{q1.substitute(postsub), q2.substitute(postsub), std::nullopt};
}

Poly jacobian_det(const PolyMap& f) {
  return f.f1.derivative(Var::x) * f.f2.derivative(Var::y) -
         f.f1.derivative(Var::y) * f.f2.derivative(Var::x);
}

FiberSolution solve_fiber(const PolyMap& f, const Rat& a, const Rat& b,
                          const AnalyzeOptions& opts) {
  FiberSolution out;
  if (fiber_contains_curve(f, a, b)) {
    out.infinite = true;
    return out;
  }
  ElimPlan plan = plan_elimination(f);
  MapEval ev(f);
  bool exact_used = false;
  auto roots = eliminant_roots(f, a, b, plan, opts, exact_used);
  if (!exact_used && roots.empty()) {
    // Numeric elimination failed to produce anything usable.
    out.residual_bound = std::numeric_limits<double>::infinity();
    return out;
  }
  backsolve_roots(ev, plan, roots, cdouble(rat_to_double(a), 0.0),
                  cdouble(rat_to_double(b), 0.0), out);
  return out;
}

int numeric_fiber_count(const PolyMap& f, const cdouble& a, const cdouble& b) {
  ElimPlan plan = plan_elimination(f);
  auto coeffs = numeric_eliminant(f, a, b, plan);
  if (coeffs.empty()) return -1;
  double maxc = 0.0;
  for (const auto& c : coeffs) maxc = std::max(maxc, std::abs(c));
  int deg = -1;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (std::abs(coeffs[i]) > 1e-10 * maxc) deg = static_cast<int>(i);
  if (deg < 1) return 0;
  coeffs.resize(static_cast<std::size_t>(deg) + 1);
  std::vector<CPoint> roots;
  try {
    for (const auto& r : roots_of_doubles(coeffs).roots)
      if (std::abs(r.c()) < 1e8) roots.push_back(r);
  } catch (const Error&) {
    return -1;
  }
  FiberSolution sol;
  MapEval ev(f);
  backsolve_roots(ev, plan, roots, a, b, sol);
  return sol.count_distinct;
}

std::pair<Rat, Rat> generic_target(Rng& rng, const std::vector<Poly>& avoid) {
  for (int tries = 0; tries < 100; ++tries) {
    Rat a(rng.range(-10000, 10000));
    Rat b(rng.range(-10000, 10000));
    bool ok = !rat_is_zero(a) && !rat_is_zero(b);
    for (const auto& p : avoid) {
      if (!ok) break;
      if (rat_is_zero(p.eval({Rat(0), Rat(0), a, b}))) ok = false;
    }
    if (ok) return {a, b};
  }
  fail(Errc::Internal, "no generic target found after 100 draws");
}

std::vector<std::pair<CPoint, CPoint>> sample_curve_points(
    const Poly& C, int want, const std::vector<Poly>& avoid) {
  std::vector<std::pair<CPoint, CPoint>> pts;
  auto blocked = [&](cdouble uu, cdouble vv) {
    if (std::abs(uu) + std::abs(vv) < 0.3) return true;  // near the origin
    for (const auto& p : avoid)
      if (std::abs(p.eval_complex({0.0, 0.0, uu, vv})) < 1e-6) return true;
    return false;
  };
  static const std::array<long, 10> grid{1, -1, 2, -2, 3, -3, 4, -4, 5, -5};
  for (bool fix_u : {true, false}) {
    Var fixed = fix_u ? Var::u : Var::v;
    Var free_v = fix_u ? Var::v : Var::u;
    for (long g : grid) {
      if (static_cast<int>(pts.size()) >= want) return pts;
      Rat val(g);
      std::array<const Rat*, 4> sub{nullptr, nullptr, nullptr, nullptr};
      sub[static_cast<std::size_t>(fixed)] = &val;
      Poly slice = C.eval_partial(sub);
      if (slice.is_zero()) {
        // The whole line sits on the curve; pick free coordinates directly.
        for (long w : grid) {
          cdouble uu = fix_u ? cdouble(g, 0) : cdouble(w, 0);
          cdouble vv = fix_u ? cdouble(w, 0) : cdouble(g, 0);
          if (!blocked(uu, vv)) pts.emplace_back(CPoint(uu), CPoint(vv));
          if (static_cast<int>(pts.size()) >= want) return pts;
        }
        continue;
      }
      if (slice.degree(free_v) < 1) continue;
      RootSet rs;
      try {
        rs = up_roots_numeric(slice.to_upoly(free_v));
      } catch (const Error&) {
        continue;
      }
      for (const auto& r : rs.roots) {
        cdouble uu = fix_u ? cdouble(g, 0) : r.c();
        cdouble vv = fix_u ? r.c() : cdouble(g, 0);
        if (!blocked(uu, vv)) pts.emplace_back(CPoint(uu), CPoint(vv));
        if (static_cast<int>(pts.size()) >= want) return pts;
      }
    }
  }
  return pts;
}

int geometric_degree(const PolyMap& f, const AnalyzeOptions& opts) {
  if (f.cached_degree) return *f.cached_degree;
  if (jacobian_det(f).is_zero())
    fail(Errc::DegenerateMap, "jacobian determinant vanishes identically");
  Rng rng(opts.seed + 0x9e3779b97f4a7c15ULL);
  int agreed = -1;
  for (int attempt = 0; attempt < 6; ++attempt) {
    auto [a1, b1] = generic_target(rng, {});
    auto [a2, b2] = generic_target(rng, {});
    FiberSolution s1 = solve_fiber(f, a1, b1, opts);
    FiberSolution s2 = solve_fiber(f, a2, b2, opts);
    if (s1.infinite || s2.infinite) continue;
    if (!std::isfinite(s1.residual_bound) && !std::isfinite(s2.residual_bound)) continue;
    if (s1.count_distinct != s2.count_distinct || s1.count_distinct <= 0) continue;
    int count = s1.count_distinct;

    // Exact confirmation on small maps: the degree of the square-free part
    // of the specialized eliminant, with coincidental leading-coefficient
    // roots stripped.
    ElimPlan plan = plan_elimination(f);
    if (exact_route_ok(plan, opts)) {
      Poly A = f.f1 - Poly::constant(a1);
      Poly B = f.f2 - Poly::constant(b1);
      UPoly R = resultant_bivariate(A, B, plan.elim, plan.keep);
      if (!R.is_zero() && R.degree() >= 0) {
        UPoly sf = UPoly::divmod(R, UPoly::gcd(R, R.derivative())).first;
        auto l1 = lead_coeff_in(f.f1, plan.elim).first;
        auto l2 = lead_coeff_in(f.f2, plan.elim).first;
        Poly lam = poly_gcd(l1, l2);
        int extraneous = 0;
        if (!lam.is_constant()) {
          UPoly lamu = lam.to_upoly(plan.keep);
          UPoly shared = UPoly::gcd(sf, lamu);
          extraneous = std::max(shared.degree(), 0);
        }
        if (sf.degree() - extraneous != count) continue;  // unconfirmed, redraw
      }
    }
    agreed = count;
    break;
  }
  if (agreed < 0) fail(Errc::Internal, "geometric degree did not stabilize");
  f.cached_degree = agreed;
  return agreed;
}

// --- candidate component handling ----------------------------------------------

namespace {

// Split a square-free curve polynomial into pieces that can be confirmed
// independently: monomial factors, rational vertical/horizontal lines,
// remaining pure-u and pure-v lumps, and the mixed primitive part.
std::vector<Poly> split_components(Poly S) {
  std::vector<Poly> comps;
  if (S.is_constant()) return comps;
  for (Var w : {Var::u, Var::v}) {
    // bare coordinate factor
    bool all = true;
    for (const auto& t : S.terms())
      if (mon_unpack(t.first)[static_cast<std::size_t>(w)] == 0) all = false;
    if (all) {
      comps.push_back(Poly::variable(w));
      S = Poly::divexact(S, Poly::variable(w));
    }
  }
  for (Var w : {Var::u, Var::v}) {
    Var other = w == Var::u ? Var::v : Var::u;
    Poly cont = content_in(S, other);  // factors free of `other`
    if (!cont.is_constant()) {
      S = Poly::divexact(S, cont);
      // Rational roots split into separate lines.
      UPoly cu = cont.to_upoly(w);
      UPoly rest = cu;
      for (long num = -6; num <= 6; ++num) {
        UPoly lin(std::vector<Rat>{Rat(-num), Rat(1)});
        auto [q, r] = UPoly::divmod(rest, lin);
        if (r.is_zero() && rest.degree() >= 1) {
          comps.push_back(Poly::variable(w) - Poly::constant(Rat(num)));
          rest = q;
        }
      }
      if (rest.degree() >= 1) comps.push_back(Poly::from_upoly(rest, w).normalized());
    }
  }
  if (!S.is_constant()) comps.push_back(S.normalized());
  return comps;
}

struct MaybeDeg {
  const PolyMap& f;
  const AnalyzeOptions& opts;
  mutable int deg = -1;
  int get() const {
    if (deg < 0) deg = geometric_degree(f, opts);
    return deg;
  }
};

bool component_confirmed(const PolyMap& f, const MaybeDeg& degf, const Poly& comp,
                         const std::vector<Poly>& others, const AnalyzeOptions& opts) {
  auto pts = sample_curve_points(comp, opts.confirm_samples, others);
  bool any_sample = false;
  for (const auto& [pu_, pv_] : pts) {
    int c = numeric_fiber_count(f, pu_.c(), pv_.c());
    if (c < 0) continue;
    any_sample = true;
    if (c != degf.get()) return true;
  }
  (void)any_sample;
  return false;
}

CurveSpec assemble_curve(const PolyMap& f, const Poly& candidate,
                         const AnalyzeOptions& opts) {
  CurveSpec out;
  if (candidate.is_zero() || candidate.is_constant()) return out;
  Poly sf = squarefree_part(candidate);
  if (sf.is_constant()) return out;
  auto comps = split_components(sf);
  MaybeDeg degf{f, opts};
  Poly prod = Poly::constant(1);
  bool all = true;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    bool keep = true;
    if (opts.confirm_components) {
      std::vector<Poly> others;
      for (std::size_t j = 0; j < comps.size(); ++j)
        if (j != i) others.push_back(comps[j]);
      keep = component_confirmed(f, degf, comps[i], others, opts);
    }
    if (keep)
      prod = prod * comps[i];
    else
      all = false;
  }
  (void)all;
  if (prod.is_constant()) return out;
  out.defining = squarefree_part(prod).primitive_integer();
  return out;
}

// --- exact elimination route (small maps) ---------------------------------------

bool exact_curves_ok(const PolyMap& f, const AnalyzeOptions& opts) {
  int dy = std::max(f.f1.degree(Var::y), 0) + std::max(f.f2.degree(Var::y), 0);
  int dx = std::max(f.f1.degree(Var::x), 0) + std::max(f.f2.degree(Var::x), 0);
  int dtot = std::max(f.f1.total_degree(), f.f2.total_degree());
  return std::min(dx, dy) <= 8 && dtot <= 8;
}

Poly critical_candidate_exact(const PolyMap& f, const Poly& jred) {
  Poly fu = f.f1 - pu();
  Poly fv = f.f2 - pv();
  auto stage = [&](Var first, Var second) -> Poly {
    Poly W1 = resultant(fu, jred, first);
    Poly W2 = resultant(fv, jred, first);
    W1 = primitive_part_in(W1, Var::u);
    W2 = primitive_part_in(W2, Var::v);
    if (W1.degree(second) <= 0 && W2.degree(second) <= 0) {
      // Nothing left to eliminate; the candidate is their product's (u,v) part.
      return W1 * W2;
    }
    return resultant(W1, W2, second);
  };
  bool j_has_y = jred.degree(Var::y) > 0;
  bool f_has_y = fu.degree(Var::y) > 0 || fv.degree(Var::y) > 0;
  Poly C;
  if (j_has_y || f_has_y)
    C = stage(Var::y, Var::x);
  else
    C = stage(Var::x, Var::y);
  check_internal(C.degree(Var::x) <= 0 && C.degree(Var::y) <= 0,
                 "critical-value elimination left source variables");
  return C;
}

Poly nonproper_candidate_exact(const PolyMap& f) {
  Poly fu = f.f1 - pu();
  Poly fv = f.f2 - pv();
  Poly prod = Poly::constant(1);
  if (fu.degree(Var::y) > 0 || fv.degree(Var::y) > 0) {
    Poly R = resultant(fu, fv, Var::y);
    auto [lc, d] = lead_coeff_in(R, Var::x);
    if (d >= 1 && !lc.is_constant()) prod = prod * lc;
  }
  if (fu.degree(Var::x) > 0 || fv.degree(Var::x) > 0) {
    Poly S = resultant(fu, fv, Var::x);
    auto [lc, d] = lead_coeff_in(S, Var::y);
    if (d >= 1 && !lc.is_constant()) prod = prod * lc;
  }
  return prod;
}

// --- sampled route (larger maps) -------------------------------------------------

std::vector<std::complex<long double>> roots_ld(
    std::vector<std::complex<long double>> cs) {
  using MatC = Eigen::Matrix<cldouble, Eigen::Dynamic, Eigen::Dynamic>;
  while (!cs.empty() && std::abs(cs.back()) == 0.0L) cs.pop_back();
  std::vector<cldouble> out;
  if (cs.size() < 2) return out;
  std::size_t n = cs.size() - 1;
  for (auto& c : cs) c /= cs.back();
  MatC C = MatC::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i + 1 < n; ++i)
    C(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0L;
  for (std::size_t i = 0; i < n; ++i)
    C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -cs[i];
  Eigen::ComplexEigenSolver<MatC> es(C, false);
  if (es.info() != Eigen::Success) return out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    out.push_back(es.eigenvalues()(i));
  return out;
}

// Critical-point images: specialize one coordinate of J at rationals, solve
// for the other, push through the map.
std::vector<std::pair<cdouble, cdouble>> crit_image_samples(const PolyMap& f,
                                                            const Poly& J) {
  std::vector<std::pair<cdouble, cdouble>> pts;
  static const std::array<std::pair<long, long>, 12> vals{{{0, 1},
                                                           {1, 1},
                                                           {-1, 1},
                                                           {2, 1},
                                                           {-2, 1},
                                                           {1, 2},
                                                           {-1, 2},
                                                           {3, 1},
                                                           {-3, 1},
                                                           {1, 3},
                                                           {5, 2},
                                                           {-5, 2}}};
  for (Var fixed : {Var::x, Var::y}) {
    Var free_v = fixed == Var::x ? Var::y : Var::x;
    if (J.degree(free_v) < 1) continue;
    for (auto [num, den] : vals) {
      Rat val = rat(num, den);
      std::array<const Rat*, 4> sub{nullptr, nullptr, nullptr, nullptr};
      sub[static_cast<std::size_t>(fixed)] = &val;
      Poly slice = J.eval_partial(sub);
      if (slice.degree(free_v) < 1) continue;
      RootSet rs;
      try {
        rs = up_roots_numeric(slice.to_upoly(free_v));
      } catch (const Error&) {
        continue;
      }
      for (const auto& r : rs.roots) {
        cdouble xv = fixed == Var::x ? cdouble(rat_to_double(val), 0) : r.c();
        cdouble yv = fixed == Var::x ? r.c() : cdouble(rat_to_double(val), 0);
        std::array<cdouble, 4> at{xv, yv, 0.0, 0.0};
        cdouble iu = f.f1.eval_complex(at);
        cdouble iv = f.f2.eval_complex(at);
        if (std::isfinite(std::abs(iu)) && std::isfinite(std::abs(iv)))
          pts.emplace_back(iu, iv);
      }
      if (pts.size() > 80) return pts;
    }
  }
  return pts;
}

// Finite limits of one map component along fibers of the other escaping to
// infinity: the non-properness samples. Long doubles keep the huge
// intermediate magnitudes representable.
std::vector<std::pair<cdouble, cdouble>> escape_samples(const PolyMap& f) {
  std::vector<std::pair<cdouble, cdouble>> out;
  static const std::array<long, 6> lines{1, -1, 2, -2, 3, -3};
  static const std::array<cldouble, 4> phases{cldouble(1, 0), cldouble(-1, 0),
                                              cldouble(0, 1), cldouble(0, -1)};
  static const std::array<long double, 3> radii{1e8L, 1e16L, 1e24L};

  auto eval_ld = [](const Poly& p, cldouble x, cldouble y) {
    cldouble acc(0.0L, 0.0L);
    // Horner in x with y-polynomials would be faster; term-wise is fine here.
    for (const auto& t : p.terms()) {
      auto e = mon_unpack(t.first);
      cldouble c(static_cast<long double>(rat_to_double(t.second)), 0.0L);
      for (int i = 0; i < e[0]; ++i) c *= x;
      for (int i = 0; i < e[1]; ++i) c *= y;
      acc += c;
    }
    return acc;
  };

  // Solve fixed(x)=value for the free variable at huge |fixed coordinate|.
  auto sweep = [&](const Poly& fix_poly, const Poly& watch_poly, bool value_is_u) {
    for (long line : lines) {
      cldouble target(static_cast<long double>(line), 0.0L);
      for (const auto& phase : phases) {
        for (Var big : {Var::x, Var::y}) {
          // collect watch-values per radius
          std::array<std::vector<cldouble>, 3> vals;
          bool usable = true;
          for (std::size_t ri = 0; ri < radii.size() && usable; ++ri) {
            cldouble bigval = phase * radii[ri];
            // coefficients of fix_poly - target in the free variable
            Var freev = big == Var::x ? Var::y : Var::x;
            auto cps = fix_poly.coeffs_in(freev);
            std::vector<cldouble> cs(cps.size());
            for (std::size_t i = 0; i < cps.size(); ++i) {
              cldouble xv = big == Var::x ? bigval : cldouble(1.0L, 0.0L);
              cldouble yv = big == Var::y ? bigval : cldouble(1.0L, 0.0L);
              // cps involves only `big`; evaluate there.
              cs[i] = eval_ld(cps[i], big == Var::x ? xv : cldouble(0, 0),
                              big == Var::y ? yv : cldouble(0, 0));
            }
            cs[0] -= target;
            long double top = 0.0L;
            for (const auto& c : cs) top = std::max(top, std::abs(c));
            if (!(top > 0.0L) || !std::isfinite(static_cast<double>(std::log10(top + 1e-300L)))) {
              usable = false;
              break;
            }
            for (auto& c : cs) c /= top;
            auto roots = roots_ld(cs);
            for (const auto& rt : roots) {
              cldouble xv = big == Var::x ? bigval : rt;
              cldouble yv = big == Var::y ? bigval : rt;
              cldouble w = eval_ld(watch_poly, xv, yv);
              if (std::abs(w) < 1e6L) vals[ri].push_back(w);
            }
          }
          if (!usable) continue;
          // Match values across radii: accept when the Cauchy differences
          // shrink, with an Aitken refinement of the limit.
          for (const auto& v3 : vals[2]) {
            long double best1 = 1e30L, best2 = 1e30L;
            cldouble v1c, v2c;
            for (const auto& v2 : vals[1])
              if (std::abs(v2 - v3) < best2) {
                best2 = std::abs(v2 - v3);
                v2c = v2;
              }
            for (const auto& v1 : vals[0])
              if (std::abs(v1 - v3) < best1) {
                best1 = std::abs(v1 - v3);
                v1c = v1;
              }
            if (vals[1].empty() || vals[0].empty()) continue;
            long double d12 = std::abs(v2c - v1c);
            long double d23 = std::abs(v3 - v2c);
            if (d23 > 0.5L * d12 + 1e-9L) continue;  // not converging
            cldouble denom = v1c - 2.0L * v2c + v3;
            cldouble limit = v3;
            if (std::abs(denom) > 1e-30L) {
              cldouble corr = (v3 - v2c) * (v3 - v2c) / denom;
              if (std::abs(corr) < 1.0L) limit = v3 - corr;
            }
            cdouble lm(static_cast<double>(limit.real()), static_cast<double>(limit.imag()));
            cdouble tg(static_cast<double>(target.real()), 0.0);
            if (value_is_u)
              out.emplace_back(tg, lm);
            else
              out.emplace_back(lm, tg);
          }
        }
      }
    }
  };

  sweep(f.f1, f.f2, /*value_is_u=*/true);   // fibers of f1 = const, watch v
  sweep(f.f2, f.f1, /*value_is_u=*/false);  // fibers of f2 = const, watch u
  return out;
}

std::optional<Rat> rationalize(double x, long max_den, double tol) {
  // Continued fractions.
  double v = x;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 40; ++it) {
    double fl = std::floor(v);
    if (fl > 1e15 || fl < -1e15) return std::nullopt;
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0;
    long q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(approx - x) <= tol * std::max(1.0, std::abs(x))) return rat(p1, q1);
    double frac = v - fl;
    if (std::abs(frac) < 1e-14) break;
    v = 1.0 / frac;
  }
  if (q1 >= 1) {
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(approx - x) <= tol * std::max(1.0, std::abs(x))) return rat(p1, q1);
  }
  return std::nullopt;
}

// Fit the lowest-degree curve through the sample points, then snap the
// coefficients to rationals and verify against every sample.
std::optional<Poly> fit_curve(const std::vector<std::pair<cdouble, cdouble>>& pts,
                              int degree_cap) {
  if (pts.empty()) return std::nullopt;
  for (int D = 1; D <= degree_cap; ++D) {
    std::vector<std::array<int, 2>> monos;
    for (int i = 0; i <= D; ++i)
      for (int j = 0; i + j <= D; ++j) monos.push_back({i, j});
    if (pts.size() + 2 < monos.size()) continue;  // underdetermined
    Eigen::MatrixXcd M(static_cast<Eigen::Index>(pts.size()),
                       static_cast<Eigen::Index>(monos.size()));
    for (std::size_t r = 0; r < pts.size(); ++r)
      for (std::size_t c = 0; c < monos.size(); ++c) {
        cdouble val(1.0, 0.0);
        for (int i = 0; i < monos[c][0]; ++i) val *= pts[r].first;
        for (int i = 0; i < monos[c][1]; ++i) val *= pts[r].second;
        M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = val;
      }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinV);
    auto sv = svd.singularValues();
    double smax = sv(0);
    double smin = sv(sv.size() - 1);
    if (!(smin < 1e-8 * std::max(1.0, smax))) continue;
    Eigen::VectorXcd ns = svd.matrixV().col(sv.size() - 1);
    // Normalize by the largest coefficient.
    Eigen::Index piv = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < ns.size(); ++i)
      if (std::abs(ns(i)) > best) {
        best = std::abs(ns(i));
        piv = i;
      }
    ns /= ns(piv);
    PolyBuilder pb;
    bool ok = true;
    for (std::size_t c = 0; c < monos.size() && ok; ++c) {
      cdouble w = ns(static_cast<Eigen::Index>(c));
      if (std::abs(w) < 1e-7) continue;
      if (std::abs(w.imag()) > 1e-6) {
        ok = false;
        break;
      }
      auto q = rationalize(w.real(), 10000, 1e-5);
      if (!q) {
        ok = false;
        break;
      }
      pb.add(mon_pack({0, 0, monos[c][0], monos[c][1]}), *q);
    }
    if (!ok) continue;
    Poly cand = std::move(pb).build();
    if (cand.is_constant()) continue;
    bool verified = true;
    for (const auto& [a, b] : pts) {
      double m = std::max({1.0, std::abs(a), std::abs(b)});
      double scale = 1.0;
      for (int i = 0; i < D; ++i) scale *= m;
      if (std::abs(cand.eval_complex({0.0, 0.0, a, b})) > 1e-4 * scale) {
        verified = false;
        break;
      }
    }
    if (verified) return cand;
  }
  return std::nullopt;
}

}  // namespace

CurveSpec critical_value_curve(const PolyMap& f, const AnalyzeOptions& opts) {
  Poly J = jacobian_det(f);
  if (J.is_zero()) fail(Errc::DegenerateMap, "jacobian determinant vanishes identically");
  if (J.is_constant()) return CurveSpec{};
  Poly jred = squarefree_part(J);
  if (exact_curves_ok(f, opts))
    return assemble_curve(f, critical_candidate_exact(f, jred), opts);
  auto samples = crit_image_samples(f, jred);
  if (samples.empty()) return CurveSpec{};
  auto fit = fit_curve(samples, opts.fit_degree_cap);
  if (!fit)
    fail(Errc::Internal, "could not reconstruct the critical value curve from samples");
  return assemble_curve(f, *fit, opts);
}

CurveSpec nonproper_curve(const PolyMap& f, const AnalyzeOptions& opts) {
  if (jacobian_det(f).is_zero())
    fail(Errc::DegenerateMap, "jacobian determinant vanishes identically");
  if (exact_curves_ok(f, opts))
    return assemble_curve(f, nonproper_candidate_exact(f), opts);
  auto samples = escape_samples(f);
  if (samples.empty()) return CurveSpec{};
  auto fit = fit_curve(samples, opts.fit_degree_cap);
  if (!fit) fail(Errc::Internal, "could not reconstruct the non-properness set from samples");
  return assemble_curve(f, *fit, opts);
}

CurveSpec branch_locus(const PolyMap& f, const AnalyzeOptions& opts) {
  AnalyzeOptions sub = opts;
  sub.confirm_components = false;  // confirm once, at this level
  CurveSpec crit = critical_value_curve(f, sub);
  CurveSpec nonp = nonproper_curve(f, sub);
  Poly prod = Poly::constant(1);
  if (!crit.empty()) prod = prod * crit.defining;
  if (!nonp.empty()) prod = prod * nonp.defining;
  if (prod.is_constant()) return CurveSpec{};
  return assemble_curve(f, prod, opts);
}

}  // namespace planemap
