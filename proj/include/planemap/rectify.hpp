#pragma once

#include <optional>
#include <string>
#include <variant>

#include "planemap/automorphism.hpp"
#include "planemap/poly.hpp"

namespace planemap {

// Stein factorization data: h = phi ∘ r with r primitive and deg phi maximal.
struct SteinData {
  UPoly phi;
  Poly r;
  Rat generic_value;   // γ with r - γ squarefree and the curve r = γ smooth
  bool phi_monic = true;  // false when no rational scaling makes phi monic
};

struct Rectified {
  AutoWord alpha;  // p ∘ alpha = x exactly
};

struct NotRectifiable {
  Poly stuck;          // polynomial state at which no reducing move exists
  std::string reason;  // which Newton-edge test failed
};

using RectifyResult = std::variant<Rectified, NotRectifiable>;

struct Lemma1Certificate {
  AutoWord alpha;
  UPoly phi_hat;  // h ∘ alpha = phi_hat(x), a polynomial in x alone
};

// Stein-decompose a nonconstant polynomial in (x, y). Candidate phi factors
// come from the functional decompositions of the restriction of h to a
// generic rational line; r is recovered by a top-down homogeneous solve and
// the result is verified by exact composition.
SteinData stein_decompose(const Poly& h);

// One degree-reducing elementary move, when a Newton edge of p carries a
// leading form equal (up to scalar) to a perfect power of (y - λx^k) or
// (x - λy^k) with k >= 1, or when the leading form is a power of a mixed
// linear form (then an affine normalization). For deg p = 1 the returned
// affine move sends p to x exactly.
std::optional<ElementaryMove> newton_reducing_move(const Poly& p);

// Iterate newton_reducing_move until p becomes x. Failure is a value.
RectifyResult rectify_coordinate(const Poly& p);

// Lemma 1: produce alpha with h ∘ alpha a polynomial in x alone, via the
// Stein factorization and rectification of r - γ. Throws RectifyFailed when
// r - γ is not rectifiable.
Lemma1Certificate lemma1_normalize(const Poly& h);

// Move a polynomial between the two planes (x, y) <-> (u, v).
Poly to_source_plane(const Poly& P);
Poly to_target_plane(const Poly& P);

}  // namespace planemap
