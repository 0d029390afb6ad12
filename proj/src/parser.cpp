#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "kst/expr.hpp"

namespace kst {

namespace {

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  TokKind kind;
  std::size_t pos;
  double number = 0.0;
  std::string_view text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= src_.size()) {
      tok_.kind = TokKind::End;
      return;
    }
    char c = src_[i_];
    switch (c) {
      case '+': tok_.kind = TokKind::Plus; ++i_; return;
      case '-': tok_.kind = TokKind::Minus; ++i_; return;
      case '*': tok_.kind = TokKind::Star; ++i_; return;
      case '/': tok_.kind = TokKind::Slash; ++i_; return;
      case '^': tok_.kind = TokKind::Caret; ++i_; return;
      case '(': tok_.kind = TokKind::LParen; ++i_; return;
      case ')': tok_.kind = TokKind::RParen; ++i_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
        ++i_;
      tok_.kind = TokKind::Ident;
      tok_.text = src_.substr(start, i_ - start);
      return;
    }
    throw ParseError(i_, std::string("unexpected character '") + c + "'");
  }

  void lex_number() {
    std::size_t start = i_;
    while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
    if (i_ < src_.size() && src_[i_] == '.') {
      ++i_;
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
    }
    if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
      std::size_t mark = i_;
      ++i_;
      if (i_ < src_.size() && (src_[i_] == '+' || src_[i_] == '-')) ++i_;
      if (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
      } else {
        i_ = mark;  // not an exponent suffix
      }
    }
    double value = 0.0;
    auto res = std::from_chars(src_.data() + start, src_.data() + i_, value);
    if (res.ec != std::errc() || res.ptr != src_.data() + i_)
      throw ParseError(start, "malformed numeric literal");
    tok_.kind = TokKind::Number;
    tok_.number = value;
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Token tok_{};
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  ScalarExpr parse() {
    ScalarExpr e = parse_sum();
    const Token& t = lex_.peek();
    if (t.kind != TokKind::End) throw ParseError(t.pos, "unexpected trailing input");
    return e;
  }

 private:
  ScalarExpr parse_sum() {
    ScalarExpr e = parse_product();
    for (;;) {
      TokKind k = lex_.peek().kind;
      if (k == TokKind::Plus) {
        lex_.take();
        e = ScalarExpr::binary(ExprOp::Add, e, parse_product());
      } else if (k == TokKind::Minus) {
        lex_.take();
        e = ScalarExpr::binary(ExprOp::Sub, e, parse_product());
      } else {
        return e;
      }
    }
  }

  ScalarExpr parse_product() {
    ScalarExpr e = parse_unary();
    for (;;) {
      TokKind k = lex_.peek().kind;
      if (k == TokKind::Star) {
        lex_.take();
        e = ScalarExpr::binary(ExprOp::Mul, e, parse_unary());
      } else if (k == TokKind::Slash) {
        lex_.take();
        e = ScalarExpr::binary(ExprOp::Div, e, parse_unary());
      } else {
        return e;
      }
    }
  }

  ScalarExpr parse_unary() {
    TokKind k = lex_.peek().kind;
    if (k == TokKind::Plus) {
      lex_.take();
      return parse_unary();
    }
    if (k == TokKind::Minus) {
      lex_.take();
      return ScalarExpr::unary(ExprOp::Neg, parse_unary());
    }
    return parse_power();
  }

  ScalarExpr parse_power() {
    ScalarExpr base = parse_atom();
    if (lex_.peek().kind != TokKind::Caret) return base;
    Token caret = lex_.take();
    ScalarExpr expo = parse_unary();  // right-associative, unary minus allowed
    if (!expo.depends_on_coords()) {
      double c;
      try {
        c = eval_value(expo, Point{});
      } catch (const DomainError&) {
        throw ParseError(caret.pos, "exponent is not a finite constant");
      }
      if (!std::isfinite(c)) throw ParseError(caret.pos, "exponent is not a finite constant");
      return ScalarExpr::pow(base, c);
    }
    // Variable exponent: lower to exp(expo * ln(base)).
    return ScalarExpr::unary(
        ExprOp::Exp, ScalarExpr::binary(ExprOp::Mul, expo,
                                        ScalarExpr::unary(ExprOp::Ln, base)));
  }

  ScalarExpr parse_atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case TokKind::Number:
        return ScalarExpr::constant(t.number);
      case TokKind::LParen: {
        ScalarExpr e = parse_sum();
        const Token& close = lex_.peek();
        if (close.kind != TokKind::RParen) throw ParseError(close.pos, "expected ')'");
        lex_.take();
        return e;
      }
      case TokKind::Ident:
        return parse_ident(t);
      default:
        throw ParseError(t.pos, "expected expression");
    }
  }

  ScalarExpr parse_ident(const Token& t) {
    std::string_view name = t.text;
    if (name.size() == 2 && name[0] == 'x' && name[1] >= '0' && name[1] <= '3')
      return ScalarExpr::coordinate(name[1] - '0');
    std::optional<ExprOp> fn;
    if (name == "exp") fn = ExprOp::Exp;
    else if (name == "ln") fn = ExprOp::Ln;
    else if (name == "sin") fn = ExprOp::Sin;
    else if (name == "cos") fn = ExprOp::Cos;
    else if (name == "sinh") fn = ExprOp::Sinh;
    else if (name == "cosh") fn = ExprOp::Cosh;
    else if (name == "sqrt") fn = ExprOp::Sqrt;
    if (!fn) throw ParseError(t.pos, "unknown identifier '" + std::string(name) + "'");
    const Token& open = lex_.peek();
    if (open.kind != TokKind::LParen) throw ParseError(open.pos, "expected '(' after function name");
    lex_.take();
    ScalarExpr arg = parse_sum();
    const Token& close = lex_.peek();
    if (close.kind != TokKind::RParen) throw ParseError(close.pos, "expected ')'");
    lex_.take();
    return ScalarExpr::unary(*fn, arg);
  }

  Lexer lex_;
};

}  // namespace

ScalarExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace kst
