#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "planemap/poly.hpp"
#include "planemap/rng.hpp"
#include "planemap/upoly.hpp"

namespace planemap {

// Which coordinate pair an automorphism acts on.
enum class Space { source, target };  // (x, y) vs (u, v)

// (x, y) -> (a x + b y + e, c x + d y + f), with ad - bc != 0.
struct Affine {
  Rat a{1}, b{0}, c{0}, d{1}, e{0}, f{0};
  Rat det() const { return a * d - b * c; }
  bool operator==(const Affine&) const = default;
};

// (x, y) -> (x + q(y), y)
struct TriangularX {
  UPoly q;
  bool operator==(const TriangularX&) const = default;
};

// (x, y) -> (x, y + q(x))
struct TriangularY {
  UPoly q;
  bool operator==(const TriangularY&) const = default;
};

using ElementaryMove = std::variant<Affine, TriangularX, TriangularY>;

ElementaryMove invert_move(const ElementaryMove& m);
Rat move_jacobian(const ElementaryMove& m);

// A plane polynomial automorphism kept as a word of elementary moves.
// moves()[0] is the outermost factor: the word [m0, m1, ..., mk] denotes
// the composition m0 ∘ m1 ∘ ... ∘ mk.
class AutoWord {
public:
  AutoWord() = default;
  explicit AutoWord(std::vector<ElementaryMove> moves) : moves_(std::move(moves)) {}

  static AutoWord identity() { return AutoWord(); }
  static AutoWord swap_xy();

  const std::vector<ElementaryMove>& moves() const { return moves_; }
  bool is_identity_word() const { return moves_.empty(); }
  void push_inner(ElementaryMove m);  // append so the new move acts first
  void push_outer(ElementaryMove m);  // prepend

  // Expanded coordinate functions in the requested plane.
  std::pair<Poly, Poly> components(Space s = Space::source) const;

  // Word degree = total degree of the expanded components.
  int degree() const;

  // Exact and numeric evaluation (applies the innermost move first).
  std::pair<Rat, Rat> eval(const std::pair<Rat, Rat>& p) const;
  std::pair<std::complex<double>, std::complex<double>> eval(
      const std::pair<std::complex<double>, std::complex<double>>& p) const;

  bool operator==(const AutoWord&) const = default;

private:
  std::vector<ElementaryMove> moves_;
  mutable std::optional<std::pair<Poly, Poly>> cache_;  // source components
};

// w1 ∘ w2 (w2 acts first).
AutoWord compose(const AutoWord& w1, const AutoWord& w2);

// Word with compose(w, invert(w)) expanding to the identity components.
AutoWord invert(const AutoWord& w);

// Pullback P ∘ w: substitutes the components of w for the coordinates of the
// given plane.
Poly apply_to_poly(const AutoWord& w, const Poly& P, Space s = Space::source);

// Jacobian determinant of the word (a nonzero constant).
Rat word_jacobian(const AutoWord& w);

// Deterministic random word: affine and triangular moves alternate, starting
// affine; triangular parts have degree <= deg_bound with integer coefficients
// in [-coeff_bound, coeff_bound]; affine parts are drawn from shears, swaps
// and diagonal scalings with entries in {±1, ±2} plus integer translations.
AutoWord random_tame(std::uint64_t seed, int word_len, int deg_bound, int coeff_bound);
AutoWord random_tame(Rng& rng, int word_len, int deg_bound, int coeff_bound);

}  // namespace planemap
