#include "planemap/poly.hpp"

#include <algorithm>
#include <unordered_map>

#include "planemap/error.hpp"

namespace planemap {

namespace {
constexpr int kExpBits = 12;
constexpr int kExpMax = (1 << kExpBits) - 1;
constexpr MonKey kExpMask = kExpMax;
}  // namespace

MonKey mon_pack(const std::array<int, 4>& e) {
  int total = 0;
  for (int i = 0; i < 4; ++i) {
    check_internal(e[static_cast<std::size_t>(i)] >= 0 &&
                       e[static_cast<std::size_t>(i)] <= kExpMax,
                   "monomial exponent out of range");
    total += e[static_cast<std::size_t>(i)];
  }
  check_internal(total <= 0xffff, "total degree out of range");
  MonKey k = static_cast<MonKey>(total) << 48;
  k |= static_cast<MonKey>(e[0]) << 36;
  k |= static_cast<MonKey>(e[1]) << 24;
  k |= static_cast<MonKey>(e[2]) << 12;
  k |= static_cast<MonKey>(e[3]);
  return k;
}

std::array<int, 4> mon_unpack(MonKey k) {
  return {static_cast<int>((k >> 36) & kExpMask), static_cast<int>((k >> 24) & kExpMask),
          static_cast<int>((k >> 12) & kExpMask), static_cast<int>(k & kExpMask)};
}

bool mon_divides(MonKey a, MonKey b) {
  auto ea = mon_unpack(a), eb = mon_unpack(b);
  for (int i = 0; i < 4; ++i)
    if (ea[static_cast<std::size_t>(i)] > eb[static_cast<std::size_t>(i)]) return false;
  return true;
}

MonKey mon_mul(MonKey a, MonKey b) {
  auto ea = mon_unpack(a), eb = mon_unpack(b);
  std::array<int, 4> e;
  for (int i = 0; i < 4; ++i)
    e[static_cast<std::size_t>(i)] =
        ea[static_cast<std::size_t>(i)] + eb[static_cast<std::size_t>(i)];
  return mon_pack(e);
}

MonKey mon_div(MonKey b, MonKey a) {
  auto ea = mon_unpack(a), eb = mon_unpack(b);
  std::array<int, 4> e;
  for (int i = 0; i < 4; ++i) {
    e[static_cast<std::size_t>(i)] =
        eb[static_cast<std::size_t>(i)] - ea[static_cast<std::size_t>(i)];
    check_internal(e[static_cast<std::size_t>(i)] >= 0, "monomial division underflow");
  }
  return mon_pack(e);
}

void Poly::normalize_terms() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first > b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    MonKey k = terms_[i].first;
    Rat c = std::move(terms_[i].second);
    std::size_t j = i + 1;
    while (j < terms_.size() && terms_[j].first == k) c += terms_[j++].second;
    if (!rat_is_zero(c)) terms_[out++] = {k, std::move(c)};
    i = j;
  }
  terms_.resize(out);
}

Poly Poly::constant(const Rat& c) {
  Poly p;
  if (!rat_is_zero(c)) p.terms_.emplace_back(mon_pack({0, 0, 0, 0}), c);
  return p;
}

Poly Poly::variable(Var w) {
  std::array<int, 4> e{0, 0, 0, 0};
  e[static_cast<std::size_t>(w)] = 1;
  return monomial(e, 1);
}

Poly Poly::monomial(const std::array<int, 4>& exps, const Rat& c) {
  Poly p;
  if (!rat_is_zero(c)) p.terms_.emplace_back(mon_pack(exps), c);
  return p;
}

Poly Poly::from_upoly(const UPoly& p, Var w) {
  Poly out;
  std::array<int, 4> e{0, 0, 0, 0};
  for (int i = p.degree(); i >= 0; --i) {
    Rat c = p.coeff(i);
    if (rat_is_zero(c)) continue;
    e[static_cast<std::size_t>(w)] = i;
    out.terms_.emplace_back(mon_pack(e), c);
  }
  return out;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

int Poly::total_degree() const {
  return terms_.empty() ? -1 : mon_total_degree(terms_.front().first);
}

int Poly::degree(Var w) const {
  if (terms_.empty()) return -1;
  int best = 0;
  for (const auto& t : terms_)
    best = std::max(best, mon_unpack(t.first)[static_cast<std::size_t>(w)]);
  return best;
}

Rat Poly::coeff(const std::array<int, 4>& exps) const {
  MonKey k = mon_pack(exps);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                             [](const Term& t, MonKey key) { return t.first > key; });
  if (it != terms_.end() && it->first == k) return it->second;
  return Rat(0);
}

const Poly::Term& Poly::leading_term() const {
  check_internal(!terms_.empty(), "leading term of zero polynomial");
  return terms_.front();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.is_zero()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    if (terms_[i].first > o.terms_[j].first) {
      merged.push_back(std::move(terms_[i++]));
    } else if (terms_[i].first < o.terms_[j].first) {
      merged.push_back(o.terms_[j++]);
    } else {
      Rat c = terms_[i].second + o.terms_[j].second;
      if (!rat_is_zero(c)) merged.emplace_back(terms_[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  while (i < terms_.size()) merged.push_back(std::move(terms_[i++]));
  while (j < o.terms_.size()) merged.push_back(o.terms_[j++]);
  terms_ = std::move(merged);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (b.terms_.size() == 1) {
    Poly r;
    r.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_)
      r.terms_.emplace_back(mon_mul(t.first, b.terms_[0].first), t.second * b.terms_[0].second);
    return r;
  }
  std::unordered_map<MonKey, Rat> acc;
  acc.reserve(a.terms_.size() * 2);
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) acc[mon_mul(ta.first, tb.first)] += ta.second * tb.second;
  Poly r;
  r.terms_.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (!rat_is_zero(c)) r.terms_.emplace_back(k, std::move(c));
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Poly::Term& x, const Poly::Term& y) { return x.first > y.first; });
  return r;
}

Poly operator*(const Rat& c, const Poly& a) {
  if (rat_is_zero(c)) return Poly();
  Poly r = a;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) fail(Errc::InvalidParams, "negative power");
  Poly r = Poly::constant(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Poly Poly::derivative(Var w) const {
  Poly r;
  auto wi = static_cast<std::size_t>(w);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    auto e = mon_unpack(t.first);
    if (e[wi] == 0) continue;
    Rat c = t.second * Rat(e[wi]);
    e[wi] -= 1;
    r.terms_.emplace_back(mon_pack(e), std::move(c));
  }
  r.normalize_terms();
  return r;
}

std::vector<Poly> Poly::coeffs_in(Var w) const {
  int d = std::max(degree(w), 0);
  std::vector<Poly> out(static_cast<std::size_t>(d) + 1);
  auto wi = static_cast<std::size_t>(w);
  for (const auto& t : terms_) {
    auto e = mon_unpack(t.first);
    int k = e[wi];
    e[wi] = 0;
    out[static_cast<std::size_t>(k)].terms_.emplace_back(mon_pack(e), t.second);
  }
  for (auto& p : out) p.normalize_terms();
  return out;
}

Poly Poly::assemble_in(Var w, const std::vector<Poly>& cs) {
  Poly out;
  auto wi = static_cast<std::size_t>(w);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    for (const auto& t : cs[k].terms_) {
      auto e = mon_unpack(t.first);
      check_internal(e[wi] == 0, "assemble_in coefficient uses the main variable");
      e[wi] = static_cast<int>(k);
      out.terms_.emplace_back(mon_pack(e), t.second);
    }
  }
  out.normalize_terms();
  return out;
}

Poly Poly::substitute(const std::array<const Poly*, 4>& repl) const {
  // Powers of each replacement are cached up to the degree actually used.
  std::array<std::vector<Poly>, 4> powers;
  for (int i = 0; i < 4; ++i) {
    if (repl[static_cast<std::size_t>(i)])
      powers[static_cast<std::size_t>(i)] = {Poly::constant(1)};
  }
  auto power = [&](int var, int e) -> const Poly& {
    auto& tab = powers[static_cast<std::size_t>(var)];
    while (static_cast<int>(tab.size()) <= e)
      tab.push_back(tab.back() * *repl[static_cast<std::size_t>(var)]);
    return tab[static_cast<std::size_t>(e)];
  };
  Poly acc;
  for (const auto& t : terms_) {
    auto e = mon_unpack(t.first);
    std::array<int, 4> kept{0, 0, 0, 0};
    Poly piece = Poly::constant(t.second);
    for (int i = 0; i < 4; ++i) {
      if (e[static_cast<std::size_t>(i)] == 0) continue;
      if (repl[static_cast<std::size_t>(i)])
        piece = piece * power(i, e[static_cast<std::size_t>(i)]);
      else
        kept[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i)];
    }
    if (kept != std::array<int, 4>{0, 0, 0, 0})
      piece = piece * Poly::monomial(kept, 1);
    acc += piece;
  }
  return acc;
}

Poly Poly::eval_partial(const std::array<const Rat*, 4>& vals) const {
  Poly acc;
  for (const auto& t : terms_) {
    auto e = mon_unpack(t.first);
    Rat c = t.second;
    std::array<int, 4> kept{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
      int ei = e[static_cast<std::size_t>(i)];
      if (ei == 0) continue;
      if (vals[static_cast<std::size_t>(i)]) {
        Rat base = *vals[static_cast<std::size_t>(i)];
        for (int k = 0; k < ei; ++k) c *= base;
      } else {
        kept[static_cast<std::size_t>(i)] = ei;
      }
    }
    acc.terms_.emplace_back(mon_pack(kept), std::move(c));
  }
  acc.normalize_terms();
  return acc;
}

Rat Poly::eval(const std::array<Rat, 4>& vals) const {
  Rat acc(0);
  for (const auto& t : terms_) {
    auto e = mon_unpack(t.first);
    Rat c = t.second;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k)
        c *= vals[static_cast<std::size_t>(i)];
    acc += c;
  }
  return acc;
}

std::complex<double> Poly::eval_complex(
    const std::array<std::complex<double>, 4>& vals) const {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& t : terms_) {
    auto e = mon_unpack(t.first);
    std::complex<double> c(rat_to_double(t.second), 0.0);
    for (int i = 0; i < 4; ++i) {
      int ei = e[static_cast<std::size_t>(i)];
      if (ei == 0) continue;
      std::complex<double> p(1.0, 0.0), b = vals[static_cast<std::size_t>(i)];
      while (ei > 0) {
        if (ei & 1) p *= b;
        ei >>= 1;
        if (ei) b *= b;
      }
      c *= p;
    }
    acc += c;
  }
  return acc;
}

Poly Poly::homogeneous_part(int d) const {
  Poly r;
  for (const auto& t : terms_)
    if (mon_total_degree(t.first) == d) r.terms_.push_back(t);
  return r;
}

UPoly Poly::to_upoly(Var w) const {
  std::vector<Rat> cs(static_cast<std::size_t>(std::max(degree(w), 0)) + 1, Rat(0));
  auto wi = static_cast<std::size_t>(w);
  for (const auto& t : terms_) {
    auto e = mon_unpack(t.first);
    for (int i = 0; i < 4; ++i)
      check_internal(i == static_cast<int>(wi) || e[static_cast<std::size_t>(i)] == 0,
                     "to_upoly on a polynomial with extra variables");
    cs[static_cast<std::size_t>(e[wi])] = t.second;
  }
  return UPoly(std::move(cs));
}

Poly Poly::normalized() const {
  if (is_zero()) return *this;
  return (Rat(1) / leading_term().second) * *this;
}

Poly Poly::primitive_integer() const {
  if (is_zero()) return *this;
  mpz_class den_lcm(1);
  for (const auto& t : terms_)
    den_lcm = lcm(den_lcm, t.second.get_den());
  mpz_class num_gcd(0);
  for (const auto& t : terms_)
    num_gcd = gcd(num_gcd, mpz_class(t.second.get_num() * (den_lcm / t.second.get_den())));
  Rat scale = Rat(den_lcm) / Rat(num_gcd);
  if (sgn(leading_term().second) < 0) scale = -scale;
  return scale * *this;
}

std::optional<Poly> Poly::try_divexact(const Poly& a, const Poly& b) {
  check_internal(!b.is_zero(), "division by zero polynomial");
  Poly r = a, q;
  const auto& [bk, bc] = b.leading_term();
  while (!r.is_zero()) {
    const auto& [rk, rc] = r.leading_term();
    if (!mon_divides(bk, rk)) return std::nullopt;
    Poly t;
    t.terms_.emplace_back(mon_div(rk, bk), rc / bc);
    q += t;
    r -= t * b;
  }
  return q;
}

Poly Poly::divexact(const Poly& a, const Poly& b) {
  auto q = try_divexact(a, b);
  check_internal(q.has_value(), "inexact polynomial division");
  return *q;
}

void PolyBuilder::add_scaled(const Poly& p, MonKey shift, const Rat& scale) {
  for (const auto& t : p.terms())
    terms_.emplace_back(mon_mul(t.first, shift), t.second * scale);
}

Poly PolyBuilder::build() && {
  Poly p;
  p.terms_ = std::move(terms_);
  p.normalize_terms();
  return p;
}

Poly px() { return Poly::variable(Var::x); }
Poly py() { return Poly::variable(Var::y); }
Poly pu() { return Poly::variable(Var::u); }
Poly pv() { return Poly::variable(Var::v); }

}  // namespace planemap
