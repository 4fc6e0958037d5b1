#include "moyal/parse.hpp"

#include "moyal/errors.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

namespace moyal {

namespace {

constexpr unsigned kMaxExponent = 1u << 20;

struct Token {
  enum class Kind { Plus, Minus, Star, Slash, Caret, LParen, RParen, Number, Ident, End };
  Kind kind;
  std::string text;  // digits or identifier
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& current() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      bump();
    }
    current_.line = line_;
    current_.column = column_;
    current_.text.clear();
    if (pos_ >= src_.size()) {
      current_.kind = Token::Kind::End;
      return;
    }
    char c = src_[pos_];
    switch (c) {
      case '+': current_.kind = Token::Kind::Plus; bump(); return;
      case '-': current_.kind = Token::Kind::Minus; bump(); return;
      case '*': current_.kind = Token::Kind::Star; bump(); return;
      case '/': current_.kind = Token::Kind::Slash; bump(); return;
      case '^': current_.kind = Token::Kind::Caret; bump(); return;
      case '(': current_.kind = Token::Kind::LParen; bump(); return;
      case ')': current_.kind = Token::Kind::RParen; bump(); return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      current_.kind = Token::Kind::Number;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        current_.text.push_back(src_[pos_]);
        bump();
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      current_.kind = Token::Kind::Ident;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        current_.text.push_back(src_[pos_]);
        bump();
      }
      return;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line_,
                      column_);
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Token current_{Token::Kind::End, "", 1, 1};
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  PhasePoly parse() {
    PhasePoly out = parse_expr();
    const Token& t = lex_.current();
    if (t.kind != Token::Kind::End) {
      throw SyntaxError("unexpected trailing input", t.line, t.column);
    }
    return out;
  }

 private:
  PhasePoly parse_expr() {
    PhasePoly out = parse_term();
    while (true) {
      const Token& t = lex_.current();
      if (t.kind == Token::Kind::Plus) {
        lex_.take();
        out += parse_term();
      } else if (t.kind == Token::Kind::Minus) {
        lex_.take();
        out -= parse_term();
      } else {
        return out;
      }
    }
  }

  PhasePoly parse_term() {
    PhasePoly out = parse_factor();
    while (true) {
      const Token& t = lex_.current();
      if (t.kind == Token::Kind::Star) {
        lex_.take();
        out *= parse_factor();
      } else if (t.kind == Token::Kind::Slash) {
        throw DivisionError("'/' is only allowed inside a rational literal",
                            t.line, t.column);
      } else {
        return out;
      }
    }
  }

  PhasePoly parse_factor() {
    PhasePoly base = parse_base();
    if (lex_.current().kind != Token::Kind::Caret) return base;
    lex_.take();
    const Token exp = lex_.current();
    if (exp.kind != Token::Kind::Number) {
      throw ExponentError("exponent must be a nonnegative integer literal",
                          exp.line, exp.column);
    }
    lex_.take();
    BigInt e = bigint_from_digits(exp.text);
    if (e > kMaxExponent) {
      throw ExponentError("exponent too large", exp.line, exp.column);
    }
    return pow(base, e.convert_to<unsigned>());
  }

  PhasePoly parse_base() {
    const Token t = lex_.take();
    switch (t.kind) {
      case Token::Kind::Minus:
        return -parse_factor();
      case Token::Kind::LParen: {
        PhasePoly inner = parse_expr();
        const Token& close = lex_.current();
        if (close.kind != Token::Kind::RParen) {
          throw SyntaxError("expected ')'", close.line, close.column);
        }
        lex_.take();
        return inner;
      }
      case Token::Kind::Number:
        return PhasePoly(GaussianRational(parse_rational(t)));
      case Token::Kind::Ident:
        if (t.text == "q") return PhasePoly::q();
        if (t.text == "p") return PhasePoly::p();
        if (t.text == "hbar") return PhasePoly::hbar();
        if (t.text == "i") return PhasePoly(GaussianRational::i());
        throw SyntaxError("unknown symbol '" + t.text + "'", t.line, t.column);
      default:
        throw SyntaxError("expected a value", t.line, t.column);
    }
  }

  // numerator token already consumed; absorbs an optional '/ posint'
  Rational parse_rational(const Token& numerator) {
    BigInt num = bigint_from_digits(numerator.text);
    if (lex_.current().kind != Token::Kind::Slash) return Rational(num);
    const Token slash = lex_.take();
    const Token den = lex_.current();
    if (den.kind != Token::Kind::Number) {
      throw DivisionError("denominator must be a positive integer literal",
                          slash.line, slash.column);
    }
    lex_.take();
    BigInt d = bigint_from_digits(den.text);
    if (d == 0) {
      throw DivisionError("zero denominator", den.line, den.column);
    }
    return Rational(num, d);
  }

  Lexer lex_;
};

std::string positive_rational_text(const Rational& r, bool parenthesize) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/" + denominator(r).str();
    if (parenthesize) s = "(" + s + ")";
  }
  return s;
}

// one visual term: magnitude * [i] * monomial, sign handled by the caller
std::string chunk_text(const Rational& magnitude, bool imaginary,
                       const Monomial& m) {
  std::vector<std::string> factors;
  const bool bare = !imaginary && m.q_pow == 0 && m.p_pow == 0 && m.hbar_pow == 0;
  if (magnitude != 1 || bare) {
    factors.push_back(positive_rational_text(magnitude, !bare));
  }
  if (imaginary) factors.push_back("i");
  auto push_power = [&factors](const char* name, unsigned e) {
    if (e == 0) return;
    std::string s = name;
    if (e > 1) s += "^" + std::to_string(e);
    factors.push_back(std::move(s));
  };
  push_power("p", m.p_pow);
  push_power("q", m.q_pow);
  push_power("hbar", m.hbar_pow);
  std::string out;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (k > 0) out += "*";
    out += factors[k];
  }
  return out;
}

}  // namespace

PhasePoly parse_poly(std::string_view text) {
  return Parser(text).parse();
}

std::string format_poly(const PhasePoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  auto append = [&out](bool negative, const std::string& chunk) {
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    out += chunk;
  };
  for (const auto& [m, c] : f.terms()) {
    if (c.re != 0) {
      append(c.re < 0, chunk_text(abs(c.re), false, m));
    }
    if (c.im != 0) {
      append(c.im < 0, chunk_text(abs(c.im), true, m));
    }
  }
  return out;
}

std::string format_operator(const PolyDiffOperator& op) {
  if (op.is_zero()) return "0";
  std::string out;
  for (const auto& [d, coeff] : op.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + format_poly(coeff) + ")";
    auto push_power = [&out](const char* name, unsigned e) {
      if (e == 0) return;
      out += "*";
      out += name;
      if (e > 1) out += "^" + std::to_string(e);
    };
    push_power("dq", d.dq);
    push_power("dp", d.dp);
  }
  return out;
}

}  // namespace moyal
