#include "planemap/automorphism.hpp"

#include <algorithm>

#include "planemap/error.hpp"

namespace planemap {

ElementaryMove invert_move(const ElementaryMove& m) {
  if (const auto* a = std::get_if<Affine>(&m)) {
    Rat det = a->det();
    check_internal(!rat_is_zero(det), "affine move with zero determinant");
    Affine inv;
    inv.a = a->d / det;
    inv.b = -a->b / det;
    inv.c = -a->c / det;
    inv.d = a->a / det;
    inv.e = -(inv.a * a->e + inv.b * a->f);
    inv.f = -(inv.c * a->e + inv.d * a->f);
    return inv;
  }
  if (const auto* tx = std::get_if<TriangularX>(&m)) return TriangularX{-tx->q};
  return TriangularY{-std::get<TriangularY>(m).q};
}

Rat move_jacobian(const ElementaryMove& m) {
  if (const auto* a = std::get_if<Affine>(&m)) return a->det();
  return Rat(1);
}

AutoWord AutoWord::swap_xy() {
  Affine s;
  s.a = 0; s.b = 1; s.c = 1; s.d = 0;
  return AutoWord({s});
}

void AutoWord::push_inner(ElementaryMove m) {
  moves_.push_back(std::move(m));
  cache_.reset();
}

void AutoWord::push_outer(ElementaryMove m) {
  moves_.insert(moves_.begin(), std::move(m));
  cache_.reset();
}

namespace {

template <typename T>
std::pair<T, T> apply_move(const ElementaryMove& m, const std::pair<T, T>& p,
                           const T& one) {
  (void)one;
  if (const auto* a = std::get_if<Affine>(&m)) {
    if constexpr (std::is_same_v<T, Poly>) {
      return {Poly::constant(a->a) * p.first + Poly::constant(a->b) * p.second +
                  Poly::constant(a->e),
              Poly::constant(a->c) * p.first + Poly::constant(a->d) * p.second +
                  Poly::constant(a->f)};
    } else if constexpr (std::is_same_v<T, Rat>) {
      return {a->a * p.first + a->b * p.second + a->e,
              a->c * p.first + a->d * p.second + a->f};
    } else {
      auto cd = [](const Rat& r) { return T(rat_to_double(r), 0.0); };
      return {cd(a->a) * p.first + cd(a->b) * p.second + cd(a->e),
              cd(a->c) * p.first + cd(a->d) * p.second + cd(a->f)};
    }
  }
  auto eval_q = [&](const UPoly& q, const T& at) -> T {
    if constexpr (std::is_same_v<T, Poly>) {
      T acc;
      for (int i = q.degree(); i >= 0; --i)
        acc = acc * at + Poly::constant(q.coeff(i));
      return acc;
    } else if constexpr (std::is_same_v<T, Rat>) {
      return q.eval(at);
    } else {
      return q.eval(at);
    }
  };
  if (const auto* tx = std::get_if<TriangularX>(&m))
    return {p.first + eval_q(tx->q, p.second), p.second};
  const auto& ty = std::get<TriangularY>(m);
  return {p.first, p.second + eval_q(ty.q, p.first)};
}

}  // namespace

std::pair<Poly, Poly> AutoWord::components(Space s) const {
  std::pair<Poly, Poly> comp;
  if (cache_) {
    comp = *cache_;
  } else {
    comp = {px(), py()};
    for (auto it = moves_.rbegin(); it != moves_.rend(); ++it)
      comp = apply_move<Poly>(*it, comp, Poly::constant(1));
    cache_ = comp;
  }
  if (s == Space::source) return comp;
  Poly U = pu(), V = pv();
  std::array<const Poly*, 4> sub{&U, &V, nullptr, nullptr};
  return {comp.first.substitute(sub), comp.second.substitute(sub)};
}

int AutoWord::degree() const {
  auto [c1, c2] = components();
  return std::max(c1.total_degree(), c2.total_degree());
}

std::pair<Rat, Rat> AutoWord::eval(const std::pair<Rat, Rat>& p) const {
  std::pair<Rat, Rat> cur = p;
  for (auto it = moves_.rbegin(); it != moves_.rend(); ++it)
    cur = apply_move<Rat>(*it, cur, Rat(1));
  return cur;
}

std::pair<std::complex<double>, std::complex<double>> AutoWord::eval(
    const std::pair<std::complex<double>, std::complex<double>>& p) const {
  auto cur = p;
  for (auto it = moves_.rbegin(); it != moves_.rend(); ++it)
    cur = apply_move<std::complex<double>>(*it, cur, std::complex<double>(1.0, 0.0));
  return cur;
}

AutoWord compose(const AutoWord& w1, const AutoWord& w2) {
  std::vector<ElementaryMove> moves = w1.moves();
  moves.insert(moves.end(), w2.moves().begin(), w2.moves().end());
  return AutoWord(std::move(moves));
}

AutoWord invert(const AutoWord& w) {
  std::vector<ElementaryMove> moves;
  moves.reserve(w.moves().size());
  for (auto it = w.moves().rbegin(); it != w.moves().rend(); ++it)
    moves.push_back(invert_move(*it));
  return AutoWord(std::move(moves));
}

Poly apply_to_poly(const AutoWord& w, const Poly& P, Space s) {
  if (w.is_identity_word()) return P;
  auto [c1, c2] = w.components(s);
  std::array<const Poly*, 4> sub{nullptr, nullptr, nullptr, nullptr};
  if (s == Space::source) {
    sub[0] = &c1;
    sub[1] = &c2;
  } else {
    sub[2] = &c1;
    sub[3] = &c2;
  }
  return P.substitute(sub);
}

Rat word_jacobian(const AutoWord& w) {
  Rat j(1);
  for (const auto& m : w.moves()) j *= move_jacobian(m);
  return j;
}

namespace {

Affine random_affine(Rng& rng, int coeff_bound) {
  // Compose a couple of unimodular generators and a diagonal scaling, then
  // add a translation.
  auto mul = [](const Affine& p, const Affine& q) {
    Affine r;
    r.a = p.a * q.a + p.b * q.c;
    r.b = p.a * q.b + p.b * q.d;
    r.c = p.c * q.a + p.d * q.c;
    r.d = p.c * q.b + p.d * q.d;
    return r;
  };
  Affine m;  // identity
  int factors = static_cast<int>(rng.range(1, 2));
  for (int i = 0; i < factors; ++i) {
    switch (rng.below(4)) {
      case 0: {  // swap
        Affine s;
        s.a = 0; s.b = 1; s.c = 1; s.d = 0;
        m = mul(m, s);
        break;
      }
      case 1: {  // x-shear
        Affine s;
        s.b = Rat(rng.nonzero_range(-2, 2));
        m = mul(m, s);
        break;
      }
      case 2: {  // y-shear
        Affine s;
        s.c = Rat(rng.nonzero_range(-2, 2));
        m = mul(m, s);
        break;
      }
      default: {  // diagonal scaling with entries in {±1, ±2}
        Affine s;
        s.a = Rat(rng.nonzero_range(-2, 2));
        s.d = Rat(rng.nonzero_range(-2, 2));
        m = mul(m, s);
        break;
      }
    }
  }
  m.e = Rat(rng.range(-coeff_bound, coeff_bound));
  m.f = Rat(rng.range(-coeff_bound, coeff_bound));
  check_internal(!rat_is_zero(m.det()), "random affine is singular");
  return m;
}

UPoly random_q(Rng& rng, int deg_bound, int coeff_bound) {
  int deg = static_cast<int>(rng.range(1, deg_bound));
  std::vector<Rat> cs(static_cast<std::size_t>(deg) + 1, Rat(0));
  for (int i = 0; i <= deg; ++i) cs[static_cast<std::size_t>(i)] = Rat(rng.range(-coeff_bound, coeff_bound));
  cs[static_cast<std::size_t>(deg)] = Rat(rng.nonzero_range(-coeff_bound, coeff_bound));
  return UPoly(std::move(cs));
}

}  // namespace

AutoWord random_tame(Rng& rng, int word_len, int deg_bound, int coeff_bound) {
  check_internal(word_len >= 0 && deg_bound >= 1 && coeff_bound >= 1,
                 "bad random_tame parameters");
  std::vector<ElementaryMove> moves;
  moves.reserve(static_cast<std::size_t>(word_len));
  for (int i = 0; i < word_len; ++i) {
    if (i % 2 == 0) {
      moves.emplace_back(random_affine(rng, coeff_bound));
    } else if (rng.coin()) {
      moves.emplace_back(TriangularX{random_q(rng, deg_bound, coeff_bound)});
    } else {
      moves.emplace_back(TriangularY{random_q(rng, deg_bound, coeff_bound)});
    }
  }
  return AutoWord(std::move(moves));
}

AutoWord random_tame(std::uint64_t seed, int word_len, int deg_bound, int coeff_bound) {
  Rng rng(seed);
  return random_tame(rng, word_len, deg_bound, coeff_bound);
}

}  // namespace planemap
