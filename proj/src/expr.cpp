#include "qfid/expr.hpp"

#include <functional>
#include <optional>

#include "qfid/error.hpp"

namespace qfid {

namespace {

// Recursive descent over any value type V with + - * and a division hook.
template <class V>
class ExprParser {
 public:
  using AtomFn = std::function<std::optional<V>(const Token&)>;
  using DivFn = std::function<V(const V&, const V&, const Token&)>;

  ExprParser(Lexer& lex, AtomFn atom, DivFn div) : lex_(lex), atom_(std::move(atom)), div_(std::move(div)) {}

  V expr() {
    V v = term();
    while (true) {
      if (lex_.accept_symbol("+")) {
        v = v + term();
      } else if (lex_.accept_symbol("-")) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

 private:
  V term() {
    V v = unary();
    while (true) {
      if (lex_.accept_symbol("*")) {
        v = v * unary();
      } else if (lex_.is_symbol("/")) {
        Token op = lex_.next();
        V d = unary();
        v = div_(v, d, op);
      } else {
        return v;
      }
    }
  }

  V unary() {
    if (lex_.accept_symbol("-")) return V() - unary();
    if (lex_.accept_symbol("+")) return unary();
    return power();
  }

  V power() {
    V base = primary();
    if (!lex_.is_symbol("^")) return base;
    Token op = lex_.next();
    bool negative = lex_.accept_symbol("-");
    if (lex_.peek().kind != TokKind::Number || lex_.peek().text.find('.') != std::string::npos)
      lex_.fail("exponent must be an integer literal");
    unsigned long e = std::stoul(lex_.next().text);
    V r = V(Rational(1));
    for (unsigned long k = 0; k < e; ++k) r = r * base;
    if (negative) r = div_(V(Rational(1)), r, op);
    return r;
  }

  V primary() {
    if (lex_.accept_symbol("(")) {
      V v = expr();
      lex_.expect_symbol(")");
      return v;
    }
    const Token& t = lex_.peek();
    if (t.kind == TokKind::Number) return V(parse_rational(lex_.next().text));
    if (t.kind == TokKind::Ident) {
      Token tok = lex_.next();
      if (auto v = atom_(tok)) return *v;
      lex_.fail_at(tok, "unknown name '" + tok.text + "' in expression");
    }
    lex_.fail("expected an expression");
  }

  Lexer& lex_;
  AtomFn atom_;
  DivFn div_;
};

}  // namespace

FieldScalar parse_scalar_expr(Lexer& lex, const FieldPtr& field) {
  ExprParser<FieldScalar> p(
      lex,
      [&](const Token& t) -> std::optional<FieldScalar> {
        if (t.text == "i") return FieldScalar::imaginary_unit();
        if (t.text == "t") {
          if (!field) throw ParseError("'t' used but no field is declared", t.line, t.column);
          return FieldScalar(RealScalar::generator(field));
        }
        return std::nullopt;
      },
      [](const FieldScalar& a, const FieldScalar& b, const Token& op) {
        if (b.is_zero()) throw ParseError("division by zero", op.line, op.column);
        return a / b;
      });
  return p.expr();
}

FieldScalar parse_scalar(std::string_view text, const FieldPtr& field) {
  Lexer lex(text);
  FieldScalar v = parse_scalar_expr(lex, field);
  if (!lex.at_end()) lex.fail("unexpected trailing input");
  return v;
}

Rational parse_rational_expr(Lexer& lex) {
  Token start = lex.peek();
  FieldScalar v = parse_scalar_expr(lex, nullptr);
  if (!v.is_real()) lex.fail_at(start, "expected a rational number");
  return v.re().rational_value();
}

UPoly parse_upoly_expr(Lexer& lex, std::string_view var) {
  ExprParser<UPoly> p(
      lex,
      [&](const Token& t) -> std::optional<UPoly> {
        if (t.text == var) return UPoly::variable();
        return std::nullopt;
      },
      [](const UPoly& a, const UPoly& b, const Token& op) {
        if (b.degree() != 0) throw ParseError("polynomial division only by nonzero constants", op.line, op.column);
        return a * UPoly(Rational(1 / b.leading()));
      });
  return p.expr();
}

}  // namespace qfid
