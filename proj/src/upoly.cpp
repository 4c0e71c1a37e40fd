#include "planemap/upoly.hpp"

#include <algorithm>

#include "planemap/error.hpp"

namespace planemap {

void UPoly::trim() {
  while (!coeffs_.empty() && rat_is_zero(coeffs_.back())) coeffs_.pop_back();
}

UPoly UPoly::constant(const Rat& c) {
  UPoly p;
  if (!rat_is_zero(c)) p.coeffs_.push_back(c);
  return p;
}

UPoly UPoly::monomial(int exp, const Rat& c) {
  UPoly p;
  if (rat_is_zero(c)) return p;
  p.coeffs_.assign(static_cast<std::size_t>(exp) + 1, Rat(0));
  p.coeffs_.back() = c;
  return p;
}

Rat UPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rat(0);
  return coeffs_[static_cast<std::size_t>(i)];
}

Rat UPoly::leading() const {
  check_internal(!is_zero(), "leading coefficient of zero polynomial");
  return coeffs_.back();
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rat> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (rat_is_zero(a.coeffs_[i])) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UPoly(std::move(out));
}

UPoly operator*(const Rat& c, const UPoly& a) {
  if (rat_is_zero(c)) return UPoly();
  UPoly r = a;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

UPoly UPoly::pow(int e) const {
  if (e < 0) fail(Errc::InvalidParams, "negative power");
  UPoly r = UPoly::constant(1);
  UPoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

UPoly UPoly::derivative() const {
  if (coeffs_.size() <= 1) return UPoly();
  std::vector<Rat> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    out[i - 1] = Rat(static_cast<long>(i)) * coeffs_[i];
  return UPoly(std::move(out));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  Rat inv = Rat(1) / leading();
  return inv * *this;
}

Rat UPoly::eval(const Rat& t) const {
  Rat acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::complex<double> UPoly::eval(const std::complex<double>& t) const {
  std::complex<double> acc(0.0, 0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * t + std::complex<double>(rat_to_double(*it), 0.0);
  return acc;
}

UPoly UPoly::compose(const UPoly& inner) const {
  UPoly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * inner + UPoly::constant(*it);
  return acc;
}

UPoly UPoly::shift(const Rat& c) const {
  UPoly t(std::vector<Rat>{c, Rat(1)});
  return compose(t);
}

UPoly UPoly::shr(int s) const {
  if (s == 0 || is_zero()) return *this;
  check_internal(static_cast<int>(coeffs_.size()) > s, "shr past degree");
  for (int i = 0; i < s; ++i)
    check_internal(rat_is_zero(coeffs_[static_cast<std::size_t>(i)]),
                   "shr drops nonzero coefficient");
  return UPoly(std::vector<Rat>(coeffs_.begin() + s, coeffs_.end()));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  check_internal(!b.is_zero(), "division by zero polynomial");
  UPoly r = a;
  if (a.degree() < b.degree()) return {UPoly(), r};
  std::vector<Rat> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rat(0));
  Rat lb = b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    Rat c = r.leading() / lb;
    q[static_cast<std::size_t>(k)] = c;
    r -= UPoly::monomial(k, c) * b;
  }
  return {UPoly(std::move(q)), r};
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

std::optional<std::pair<UPoly, UPoly>> decompose_at_degree(const UPoly& h, int rho_deg) {
  int n = h.degree();
  if (n <= 0 || rho_deg <= 0 || n % rho_deg != 0) return std::nullopt;
  int s = n / rho_deg;  // deg phi
  Rat lc = h.leading();
  UPoly g = h.monic();

  // rho = t^r + b_{r-1} t^{r-1} + ... + b_1 t, solved top-down. At step i the
  // coefficient of t^{n-i} in rho^s is s*b_{r-i} plus terms already fixed, so
  // each b is a single division.
  UPoly rho = UPoly::monomial(rho_deg, 1);
  for (int i = 1; i < rho_deg; ++i) {
    UPoly p = rho.pow(s);
    Rat b = (g.coeff(n - i) - p.coeff(n - i)) / Rat(s);
    if (!rat_is_zero(b)) rho += UPoly::monomial(rho_deg - i, b);
  }

  // rho-adic digits of h must all be constants; they are the phi coefficients.
  std::vector<Rat> phi_coeffs;
  UPoly cur = h;
  while (!cur.is_zero()) {
    auto [q, r] = UPoly::divmod(cur, rho);
    if (!r.is_constant()) return std::nullopt;
    phi_coeffs.push_back(r.coeff(0));
    cur = std::move(q);
  }
  UPoly phi{std::vector<Rat>(phi_coeffs)};
  if (phi.degree() != s) return std::nullopt;
  if (!(phi.compose(rho) == h)) return std::nullopt;
  (void)lc;
  return std::make_pair(phi, rho);
}

std::vector<std::pair<UPoly, UPoly>> up_decompose(const UPoly& h) {
  int n = h.degree();
  check_internal(n >= 1, "up_decompose needs a nonconstant polynomial");
  std::vector<std::pair<UPoly, UPoly>> out;
  for (int s = 2; s * 2 <= n; ++s) {  // deg phi ascending, both factors >= 2
    if (n % s != 0) continue;
    if (auto d = decompose_at_degree(h, n / s)) out.push_back(*d);
  }
  return out;
}

std::optional<UPoly> upoly_nth_root(const UPoly& u, int s) {
  if (s <= 0) return std::nullopt;
  if (s == 1) return u;
  if (u.is_zero()) return UPoly();
  int n = u.degree();
  if (n % s != 0) return std::nullopt;
  int m = n / s;

  auto lead = rat_nth_root(u.leading(), s);
  if (!lead) return std::nullopt;

  // Lowest exponent must also be a multiple of s; peel it off to keep the
  // triangular solve anchored at a nonzero constant term.
  int low = 0;
  while (rat_is_zero(u.coeff(low))) ++low;
  if (low % s != 0) return std::nullopt;
  UPoly core = u.shr(low);
  int cm = core.degree() / s;

  auto c0 = rat_nth_root(core.coeff(0), s);
  if (!c0) return std::nullopt;
  std::vector<Rat> r(static_cast<std::size_t>(cm) + 1, Rat(0));
  r[0] = *c0;
  UPoly root = UPoly::constant(*c0);
  for (int i = 1; i <= cm; ++i) {
    UPoly p = root.pow(s);
    // [t^i] (root + b t^i + ...)^s = [t^i] root^s + s*b*c0^{s-1}
    Rat denom = Rat(s) * r[0];
    for (int k = 0; k < s - 2; ++k) denom *= r[0];
    Rat b = (core.coeff(i) - p.coeff(i)) / denom;
    r[static_cast<std::size_t>(i)] = b;
    if (!rat_is_zero(b)) root += UPoly::monomial(i, b);
  }
  if (!(root.pow(s) == core)) {
    if (s % 2 == 0) return std::nullopt;
    return std::nullopt;
  }
  UPoly result = root * UPoly::monomial(low / s, 1);
  if (s % 2 == 0 && sgn(result.leading()) < 0) result = -result;
  return result;
}

}  // namespace planemap
