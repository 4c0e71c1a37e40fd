#pragma once

#include <string>
#include <variant>
#include <vector>

#include "planemap/analyze.hpp"
#include "planemap/automorphism.hpp"
#include "planemap/poly.hpp"
#include "planemap/upoly.hpp"

namespace planemap {

// The three normal forms: (x^d, y), (x^d, x^m y) and
// (x^d, x^m (x^n y + sum a_i x^i)).
struct TypeI {
  int d = 1;
  bool operator==(const TypeI&) const = default;
};
struct TypeII {
  int d = 1, m = 1;
  bool operator==(const TypeII&) const = default;
};
struct TypeIII {
  int d = 1, m = 1, n = 1;
  std::vector<Rat> a;  // a[0] != 0 and a[i] = 0 whenever (i + m) % d == 0
  bool operator==(const TypeIII&) const = default;
};
using NormalForm = std::variant<TypeI, TypeII, TypeIII>;

// Throws InvalidParams when the parameter constraints are violated.
void validate_normal_form(const NormalForm& nf);
PolyMap normal_form_map(const NormalForm& nf);
int normal_form_degree(const NormalForm& nf);
std::string normal_form_text(const NormalForm& nf);

// Second component in the shape a x^k y + x^l g(x) with g(0) != 0. A zero
// x-part is stored as g = 0, l = 0.
struct SemiMonomial {
  Rat a;
  int k = 0, l = 0;
  UPoly g;
  bool g_zero() const { return g.is_zero(); }
};

// Pattern-match F2 against the semi-monomial shape; ShapeMismatch otherwise.
SemiMonomial extract_semi_monomial(const Poly& F2);

struct SplitData {
  int m = 0, n = 0;
  UPoly h, b, c;
  AutoWord gamma1, gamma2;
};

// Case split for k >= 1: partition the exponents of x^l g(x) into the h / b /
// c(x^d) parts and build the two correcting automorphisms.
SplitData split_case(const SemiMonomial& semi, int d);

// Enforce a_0 != 0 by shifting powers of x into m, collapsing to TypeII when
// nothing survives. Accepts unfiltered coefficients and re-applies the
// congruence filter after each shift.
NormalForm renormalize_typeiii(int d, int m, int n, std::vector<Rat> a);

// Full certificate of one normalization run.
struct NormalizationTrace {
  AutoWord alpha_target;  // alpha(E_f) = {u = 0}
  AutoWord beta_source;   // Lemma 1 word
  Rat shift_c;            // c in x^d + c
  SemiMonomial semi;
  int m = 0, n = 0, k = 0, l = 0;
  UPoly h, b, c;
  AutoWord gamma1, gamma2;
  NormalForm final_form;
  std::vector<std::string> notes;

  // gamma1 ∘ shift ∘ alpha_target (target side) and beta ∘ gamma2 (source).
  AutoWord target_word() const;
  AutoWord source_word() const;
  // post ∘ f ∘ pre with the words above; equals final_form's map exactly.
  PolyMap replay(const PolyMap& f) const;
};

// The Theorem 2 engine. Errors: NotInClass when the branch locus is empty or
// not rectifiable; RectifyFailed from Lemma 1; Lemma1MiddleCoefficients when
// the Lemma 1 shape is not x^d + c; ShapeMismatch from the semi-monomial
// extraction; Internal when the replay identity fails to verify.
NormalizationTrace normalize_map(const PolyMap& f, const AnalyzeOptions& opts = {});

// The distinguished fiber of a TypeII/TypeIII trace: a line through the
// source plane that f maps to a single target point.
struct DistinguishedFiber {
  std::pair<Rat, Rat> target;
  UPoly x_of_t, y_of_t;
};
DistinguishedFiber distinguished_fiber(const NormalizationTrace& trace);
bool distinguished_fiber_verifies(const PolyMap& f, const DistinguishedFiber& df);

// Equivalence under diagonal scalings on both planes.
bool equivalent_normal_forms(const NormalForm& n1, const NormalForm& n2);

// Monomial germ t -> (t^p, c t^q) at the origin.
struct Germ {
  int p = 1, q = 1;
  Rat c = Rat(1);
};

enum class GermBehavior { LineOnly, BranchAtOrigin, BoundedBranch, BranchAtInfinity };
const char* germ_behavior_name(GermBehavior g);

// Exponent arithmetic for the pullback of a monomial germ.
GermBehavior germ_pullback(const NormalForm& nf, const Germ& germ);

// --- J-curve ratio predicate --------------------------------------------------

struct JCurveComponent {
  UPoly p, q;  // t -> (p(t), q(t)) in the target plane
};

struct JCurveInput {
  std::vector<JCurveComponent> components;
  std::vector<AutoWord> probes;  // target automorphisms to test against
};

enum class JCurveVerdict { NotJCurve, CandidateJCurve };

struct JCurveReport {
  std::vector<bool> ratio_equal;         // identity first, then one per probe
  std::vector<bool> component_not_line;  // one per component
  JCurveVerdict verdict = JCurveVerdict::NotJCurve;
};

JCurveReport jcurve_ratio_check(const JCurveInput& input);

}  // namespace planemap
