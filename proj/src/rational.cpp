#include "planemap/rational.hpp"

#include "planemap/error.hpp"

namespace planemap {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DegenerateElimination: return "DegenerateElimination";
    case Errc::DegenerateMap: return "DegenerateMap";
    case Errc::NumericUnstable: return "NumericUnstable";
    case Errc::RectifyFailed: return "RectifyFailed";
    case Errc::NotInClass: return "NotInClass";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::Lemma1MiddleCoefficients: return "Lemma1MiddleCoefficients";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::Parse: return "ParseError";
    case Errc::Internal: return "InternalError";
  }
  return "UnknownError";
}

Rat rat(long num, long den) {
  if (den == 0) fail(Errc::InvalidParams, "rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw ParseError(0, "rational", "empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw ParseError(0, "rational", "bad rational literal: " + s);
  if (sgn(q.get_den()) <= 0)
    throw ParseError(0, "rational", "nonpositive denominator: " + s);
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

long rat_to_long(const Rat& q) {
  if (!rat_is_integer(q) || !q.get_num().fits_slong_p())
    fail(Errc::Internal, "rational does not fit a long: " + q.get_str());
  return q.get_num().get_si();
}

std::optional<Rat> rat_nth_root(const Rat& q, int n) {
  if (n <= 0) fail(Errc::InvalidParams, "root order must be positive");
  if (n == 1) return q;
  if (sgn(q) == 0) return Rat(0);
  if (sgn(q) < 0 && n % 2 == 0) return std::nullopt;

  mpz_class num = abs(q.get_num());
  mpz_class den = q.get_den();
  mpz_class rn, rd;
  bool exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) != 0;
  bool exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n) != 0;
  if (!exact_n || !exact_d) return std::nullopt;
  Rat r(rn, rd);
  r.canonicalize();
  if (sgn(q) < 0) r = -r;
  return r;
}

}  // namespace planemap
