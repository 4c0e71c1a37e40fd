#include "planemap/poly_io.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "planemap/error.hpp"

namespace planemap {

namespace {

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void expected(const std::string& what) {
    throw ParseError(pos, what,
                     "parse error at offset " + std::to_string(pos) + ": expected " + what);
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  mpz_class integer_literal() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) expected("integer");
    return mpz_class(s.substr(start, pos - start));
  }
};

struct Parser {
  Lexer lex;
  const std::map<char, Var>& alphabet;
  int plane_seen = -1;  // 0 = source, 1 = target

  Var variable() {
    char c = lex.peek();
    auto it = alphabet.find(c);
    if (it == alphabet.end()) lex.expected("variable");
    ++lex.pos;
    int plane = (it->second == Var::x || it->second == Var::y) ? 0 : 1;
    if (alphabet.size() > 2) {
      if (plane_seen >= 0 && plane_seen != plane)
        throw ParseError(lex.pos - 1, "variable of the same plane",
                         "parse error at offset " + std::to_string(lex.pos - 1) +
                             ": polynomial mixes source and target variables");
      plane_seen = plane;
    }
    return it->second;
  }

  int exponent() {
    if (!lex.accept('^')) return 1;
    lex.skip_ws();
    std::size_t at = lex.pos;
    mpz_class e = lex.integer_literal();
    if (e <= 0 || !e.fits_sint_p())
      throw ParseError(at, "positive exponent",
                       "parse error at offset " + std::to_string(at) +
                           ": expected positive exponent");
    return static_cast<int>(e.get_si());
  }

  // var [ '^' posint ] [ '*' var [ '^' posint ] ]
  std::array<int, 4> monom() {
    std::array<int, 4> e{0, 0, 0, 0};
    Var w = variable();
    e[static_cast<std::size_t>(w)] += exponent();
    std::size_t save = lex.pos;
    if (lex.accept('*')) {
      if (alphabet.count(lex.peek())) {
        Var w2 = variable();
        e[static_cast<std::size_t>(w2)] += exponent();
      } else {
        lex.pos = save;  // the '*' belongs to something else (it does not)
        lex.expected("variable");
      }
    }
    return e;
  }

  // term := coeff [ '*' monom ] | monom
  Poly term() {
    char c = lex.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = lex.integer_literal();
      mpz_class den(1);
      if (lex.accept('/')) {
        lex.skip_ws();
        std::size_t at = lex.pos;
        den = lex.integer_literal();
        if (den == 0)
          throw ParseError(at, "positive denominator",
                           "parse error at offset " + std::to_string(at) +
                               ": zero denominator");
      }
      Rat coeff{mpq_class(num, den)};
      coeff.canonicalize();
      if (lex.accept('*')) {
        auto e = monom();
        return Poly::monomial(e, coeff);
      }
      return Poly::constant(coeff);
    }
    if (alphabet.count(c)) return Poly::monomial(monom(), Rat(1));
    lex.expected("coefficient or variable");
  }

  Poly poly() {
    Poly acc;
    bool neg = false;
    if (lex.accept('-'))
      neg = true;
    else
      lex.accept('+');
    for (;;) {
      Poly t = term();
      acc += neg ? -t : t;
      if (lex.eof()) break;
      if (lex.accept('+'))
        neg = false;
      else if (lex.accept('-'))
        neg = true;
      else
        lex.expected("'+' or '-'");
    }
    return acc;
  }
};

const std::map<char, Var> kFullAlphabet{
    {'x', Var::x}, {'y', Var::y}, {'u', Var::u}, {'v', Var::v}};

std::string coeff_str(const Rat& c) {
  Rat a = abs(c);
  return a.get_str();
}

void print_monomial(std::ostringstream& os, const std::array<int, 4>& e,
                    const std::array<char, 4>& names) {
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    int ei = e[static_cast<std::size_t>(i)];
    if (ei == 0) continue;
    if (!first) os << '*';
    os << names[static_cast<std::size_t>(i)];
    if (ei > 1) os << '^' << ei;
    first = false;
  }
}

std::string print_with_names(const Poly& P, const std::array<char, 4>& names) {
  if (P.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : P.terms()) {
    bool neg = sgn(c) < 0;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    auto e = mon_unpack(k);
    bool is_const = e == std::array<int, 4>{0, 0, 0, 0};
    Rat a = abs(c);
    if (is_const) {
      os << coeff_str(c);
    } else {
      if (a != 1) os << coeff_str(c) << '*';
      print_monomial(os, e, names);
    }
    first = false;
  }
  return os.str();
}

}  // namespace

Poly parse_poly(const std::string& text) {
  Parser p{Lexer{text}, kFullAlphabet};
  Poly out = p.poly();
  return out;
}

std::string print_poly(const Poly& P) { return print_with_names(P, kVarName); }

UPoly parse_upoly(const std::string& text, char var) {
  std::map<char, Var> alphabet{{var, Var::x}};
  Parser p{Lexer{text}, alphabet};
  return p.poly().to_upoly(Var::x);
}

std::string print_upoly(const UPoly& p, char var) {
  return print_with_names(Poly::from_upoly(p, Var::x), {var, '?', '?', '?'});
}

}  // namespace planemap
