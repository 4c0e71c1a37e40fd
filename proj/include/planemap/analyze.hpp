#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "planemap/automorphism.hpp"
#include "planemap/poly.hpp"
#include "planemap/roots.hpp"

namespace planemap {

// A polynomial map (x, y) -> (f1(x, y), f2(x, y)) of the plane, written in
// target coordinates (u, v).
struct PolyMap {
  Poly f1, f2;
  mutable std::optional<int> cached_degree;

  bool operator==(const PolyMap& o) const { return f1 == o.f1 && f2 == o.f2; }
};

// post ∘ f ∘ pre, expanded exactly.
PolyMap apply_to_map(const AutoWord& pre, const PolyMap& f, const AutoWord& post);

// A plane curve in the target coordinates. defining is square-free; an empty
// curve is stored as the constant 1.
struct CurveSpec {
  Poly defining = Poly::constant(1);
  bool empty() const { return defining.is_constant(); }
};

struct FiberSolution {
  std::vector<std::pair<CPoint, CPoint>> points;
  int count_distinct = 0;
  double residual_bound = 0.0;
  bool infinite = false;  // a whole curve maps to the target point
};

struct AnalyzeOptions {
  std::uint64_t seed = 0;
  // The exact elimination route runs when the Sylvester dimension and the
  // interpolation node count stay under these caps; larger maps use the
  // sampled route with numeric evidence.
  int exact_dim_cap = 16;
  long exact_nodes_cap = 700;
  bool confirm_components = true;  // fiber-count confirmation per component
  int confirm_samples = 3;
  int fit_degree_cap = 8;  // max total degree for sampled curve fits
};

Poly jacobian_det(const PolyMap& f);

// Number of preimages of a generic target point. Counts fibers numerically at
// independent random rational targets and cross-checks them (plus an exact
// eliminant confirmation when the map is small enough).
int geometric_degree(const PolyMap& f, const AnalyzeOptions& opts = {});

CurveSpec critical_value_curve(const PolyMap& f, const AnalyzeOptions& opts = {});
CurveSpec nonproper_curve(const PolyMap& f, const AnalyzeOptions& opts = {});
CurveSpec branch_locus(const PolyMap& f, const AnalyzeOptions& opts = {});

// Solve f = (a, b). Eliminates one variable exactly, finds numeric roots,
// back-solves the other coordinate and polishes with 2-D Newton steps. The
// infinite flag is decided symbolically via gcd(f1 - a, f2 - b).
FiberSolution solve_fiber(const PolyMap& f, const Rat& a, const Rat& b,
                          const AnalyzeOptions& opts = {});

// Fiber count over a numeric target (used to probe points on curves whose
// coordinates are algebraic). Returns -1 when the count is unreliable.
int numeric_fiber_count(const PolyMap& f, const std::complex<double>& a,
                        const std::complex<double>& b);

// Draw a rational target that avoids the zero loci of every polynomial in
// `avoid` (integer coordinates in [-10^4, 10^4], at most 100 retries).
std::pair<Rat, Rat> generic_target(Rng& rng, const std::vector<Poly>& avoid);

// Numeric points on the curve C(u, v) = 0 (C nonconstant), sampled by fixing
// one coordinate at small rationals and solving for the other.
std::vector<std::pair<CPoint, CPoint>> sample_curve_points(const Poly& C, int want,
                                                           const std::vector<Poly>& avoid);

}  // namespace planemap
