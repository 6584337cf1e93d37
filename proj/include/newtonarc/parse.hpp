#ifndef NEWTONARC_PARSE_HPP
#define NEWTONARC_PARSE_HPP

// Recursive-descent parser for the polynomial grammar:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-'* atom ('^' nat)?
//   atom   := nat ('/' nat)? | ident | '(' expr ')'
//
// Whitespace is insignificant.  Identifiers name either polynomial variables
// or, over a test ring, its nilpotent generators.  Syntax errors carry the
// character offset in the location field.

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "newtonarc/mpoly.hpp"

namespace newtonarc {

namespace detail {

class PolyParser {
public:
  PolyParser(const std::string& text, const RingPtr& ring,
             const std::vector<std::string>& vars)
      : text_(text), ring_(ring), vars_(vars) {}

  MPoly parse() {
    MPoly p = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      fail("syntax-error", "unexpected character '" + std::string(1, text_[pos_]) + "'",
           "offset " + std::to_string(pos_));
    return p;
  }

private:
  MPoly parse_expr() {
    skip_ws();
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = (get() == '-');
    MPoly acc = parse_term();
    if (neg) acc = -acc;
    while (true) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      get();
      MPoly t = parse_term();
      acc = (c == '+') ? acc + t : acc - t;
    }
    return acc;
  }

  MPoly parse_term() {
    MPoly acc = parse_factor();
    while (true) {
      skip_ws();
      if (peek() != '*') break;
      get();
      acc = acc * parse_factor();
    }
    return acc;
  }

  MPoly parse_factor() {
    skip_ws();
    bool neg = false;
    while (peek() == '-') {
      get();
      neg = !neg;
      skip_ws();
    }
    MPoly a = parse_atom();
    skip_ws();
    if (peek() == '^') {
      get();
      unsigned e = parse_nat();
      a = a.pow(e);
    }
    return neg ? -a : a;
  }

  MPoly parse_atom() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      get();
      MPoly p = parse_expr();
      skip_ws();
      if (peek() != ')')
        fail("syntax-error", "expected ')'", "offset " + std::to_string(pos_));
      get();
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigInt num = parse_int();
      skip_ws();
      if (peek() == '/') {
        get();
        BigInt den = parse_int();
        if (den == 0)
          fail("syntax-error", "zero denominator", "offset " + std::to_string(pos_));
        return MPoly::constant(ring_, vars_, Scalar::of_rat(ring_, BigRat(num, den)));
      }
      return MPoly::constant(ring_, vars_, Scalar::of_int(ring_, num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      std::string id = parse_ident();
      for (const auto& v : vars_)
        if (v == id) return MPoly::variable(ring_, vars_, id);
      if (ring_->kind() == Ring::Kind::test_ring) {
        const auto& gens = ring_->generators();
        for (std::size_t i = 0; i < gens.size(); ++i)
          if (gens[i] == id)
            return MPoly::constant(ring_, vars_, Scalar::generator(ring_, i));
      }
      fail("unknown-identifier", "unknown identifier '" + id + "'",
           "offset " + std::to_string(start));
    }
    fail("syntax-error",
         pos_ == text_.size() ? "unexpected end of input"
                              : "unexpected character '" + std::string(1, c) + "'",
         "offset " + std::to_string(pos_));
  }

  BigInt parse_int() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("syntax-error", "expected a number", "offset " + std::to_string(pos_));
    BigInt v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      v = v * 10 + (text_[pos_++] - '0');
    return v;
  }

  unsigned parse_nat() {
    BigInt v = parse_int();
    if (v > 100000u) fail("syntax-error", "exponent too large");
    return static_cast<unsigned>(v);
  }

  std::string parse_ident() {
    std::string id;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      id += text_[pos_++];
    return id;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return text_[pos_++]; }

  const std::string& text_;
  RingPtr ring_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline MPoly parse_poly(const std::string& text, const std::vector<std::string>& vars,
                        const RingPtr& ring) {
  return detail::PolyParser(text, ring, vars).parse();
}

// A constant expression (generators allowed over test rings).
inline Scalar parse_scalar(const std::string& text, const RingPtr& ring) {
  return parse_poly(text, {}, ring).as_constant();
}

}  // namespace newtonarc

#endif
