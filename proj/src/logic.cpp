#include "qfid/logic.hpp"

#include "qfid/error.hpp"
#include "qfid/lexer.hpp"

namespace qfid {

std::string to_string(Cmp c) {
  switch (c) {
    case Cmp::Lt:
      return "<";
    case Cmp::Le:
      return "<=";
    case Cmp::Eq:
      return "=";
    case Cmp::Ge:
      return ">=";
    case Cmp::Gt:
      return ">";
    case Cmp::Ne:
      return "!=";
  }
  return "?";
}

StatePtr make_atom(std::string name) {
  auto f = std::make_shared<StateFormula>();
  f->kind = StateFormula::Kind::Atom;
  f->atom = std::move(name);
  return f;
}

StatePtr make_true() {
  static const StatePtr t = std::make_shared<StateFormula>();
  return t;
}

StatePtr make_false() { return make_not(make_true()); }

StatePtr make_not(StatePtr g) {
  if (g->kind == StateFormula::Kind::Not) return g->lhs;
  auto f = std::make_shared<StateFormula>();
  f->kind = StateFormula::Kind::Not;
  f->lhs = std::move(g);
  return f;
}

StatePtr make_and(StatePtr a, StatePtr b) {
  auto f = std::make_shared<StateFormula>();
  f->kind = StateFormula::Kind::And;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

StatePtr make_or(StatePtr a, StatePtr b) { return make_not(make_and(make_not(std::move(a)), make_not(std::move(b)))); }

StatePtr make_implies(StatePtr a, StatePtr b) { return make_not(make_and(std::move(a), make_not(std::move(b)))); }

StatePtr make_fidelity(Cmp cmp, Rational tau, PathPtr path) {
  if (tau < 0 || tau > 1) throw Error("fidelity threshold " + to_string(tau) + " outside [0,1]");
  auto f = std::make_shared<StateFormula>();
  f->kind = StateFormula::Kind::Fidelity;
  f->cmp = cmp;
  f->tau = std::move(tau);
  f->path = std::move(path);
  return f;
}

PathPtr make_next(StatePtr g) {
  auto f = std::make_shared<PathFormula>();
  f->kind = PathFormula::Kind::Next;
  f->lhs = std::move(g);
  return f;
}

PathPtr make_until(StatePtr a, StatePtr b) {
  auto f = std::make_shared<PathFormula>();
  f->kind = PathFormula::Kind::Until;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

PathPtr make_bounded_until(StatePtr a, StatePtr b, unsigned long k) {
  auto f = std::make_shared<PathFormula>();
  f->kind = PathFormula::Kind::BoundedUntil;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  f->bound = k;
  return f;
}

namespace {

bool same(const StatePtr& a, const StatePtr& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

}  // namespace

bool operator==(const StateFormula& a, const StateFormula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case StateFormula::Kind::True:
      return true;
    case StateFormula::Kind::Atom:
      return a.atom == b.atom;
    case StateFormula::Kind::Not:
      return same(a.lhs, b.lhs);
    case StateFormula::Kind::And:
      return same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
    case StateFormula::Kind::Fidelity:
      return a.cmp == b.cmp && a.tau == b.tau && *a.path == *b.path;
  }
  return false;
}

bool operator==(const PathFormula& a, const PathFormula& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == PathFormula::Kind::BoundedUntil && a.bound != b.bound) return false;
  return same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
}

// ------------------------------------------------------------------ parser

namespace {

bool is_keyword(const std::string& s) { return s == "true" || s == "false" || s == "X" || s == "U" || s == "F"; }

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : lex_(text) {}

  StatePtr whole_state() {
    StatePtr f = implies();
    if (!lex_.at_end()) lex_.fail("unexpected '" + lex_.peek().text + "'");
    return f;
  }

  PathPtr whole_path() {
    PathPtr p = path();
    if (!lex_.at_end()) lex_.fail("unexpected '" + lex_.peek().text + "'");
    return p;
  }

 private:
  // -> is right associative and binds weakest.
  StatePtr implies() {
    StatePtr a = disjunction();
    if (lex_.accept_symbol("->")) return make_implies(a, implies());
    return a;
  }

  StatePtr disjunction() {
    StatePtr a = conjunction();
    while (lex_.accept_symbol("|")) a = make_or(a, conjunction());
    return a;
  }

  StatePtr conjunction() {
    StatePtr a = unary();
    while (lex_.accept_symbol("&")) a = make_and(a, unary());
    return a;
  }

  StatePtr unary() {
    if (lex_.accept_symbol("!")) return make_not(unary());
    return primary();
  }

  StatePtr primary() {
    if (lex_.accept_symbol("(")) {
      StatePtr f = implies();
      lex_.expect_symbol(")");
      return f;
    }
    const Token& t = lex_.peek();
    if (t.kind != TokKind::Ident) lex_.fail("expected a state formula");
    if (t.text == "true") {
      lex_.next();
      return make_true();
    }
    if (t.text == "false") {
      lex_.next();
      return make_false();
    }
    if (t.text == "F") return fidelity();
    if (is_keyword(t.text)) lex_.fail("unexpected keyword '" + t.text + "'");
    return make_atom(lex_.next().text);
  }

  StatePtr fidelity() {
    lex_.next();  // F
    Cmp cmp;
    if (lex_.accept_symbol("<=")) {
      cmp = Cmp::Le;
    } else if (lex_.accept_symbol("<")) {
      cmp = Cmp::Lt;
    } else if (lex_.accept_symbol(">=")) {
      cmp = Cmp::Ge;
    } else if (lex_.accept_symbol(">")) {
      cmp = Cmp::Gt;
    } else if (lex_.accept_symbol("=") || lex_.accept_symbol("==")) {
      cmp = Cmp::Eq;
    } else if (lex_.accept_symbol("!=")) {
      cmp = Cmp::Ne;
    } else {
      lex_.fail("expected a comparison operator after 'F'");
    }
    Token tau_tok = lex_.peek();
    Rational tau = threshold();
    if (tau < 0 || tau > 1) lex_.fail_at(tau_tok, "fidelity threshold " + to_string(tau) + " outside [0,1]");
    lex_.expect_symbol("[");
    PathPtr p = path();
    lex_.expect_symbol("]");
    return make_fidelity(cmp, tau, p);
  }

  Rational threshold() {
    if (lex_.is_symbol("-")) lex_.fail("fidelity threshold must be in [0,1]");
    if (lex_.peek().kind != TokKind::Number) lex_.fail("expected a rational threshold");
    std::string text = lex_.next().text;
    if (lex_.accept_symbol("/")) {
      if (lex_.peek().kind != TokKind::Number) lex_.fail("expected a denominator");
      Token den = lex_.next();
      if (text.find('.') != std::string::npos || den.text.find('.') != std::string::npos)
        lex_.fail_at(den, "fraction parts must be integers");
      text += "/" + den.text;
      try {
        return parse_rational(text);
      } catch (const Error& e) {
        lex_.fail_at(den, e.what());
      }
    }
    return parse_rational(text);
  }

  PathPtr path() {
    if (lex_.accept_ident("X")) return make_next(implies());
    StatePtr a = implies();
    lex_.expect_ident("U");
    if (lex_.accept_symbol("<=")) {
      if (lex_.is_symbol("-")) lex_.fail("step bound must be non-negative");
      if (lex_.peek().kind != TokKind::Number || lex_.peek().text.find('.') != std::string::npos)
        lex_.fail("expected a non-negative integer step bound");
      unsigned long k = std::stoul(lex_.next().text);
      return make_bounded_until(a, implies(), k);
    }
    return make_until(a, implies());
  }

  Lexer lex_;
};

std::string paren(const StateFormula& f) {
  if (f.kind == StateFormula::Kind::And) return "(" + to_string(f) + ")";
  return to_string(f);
}

}  // namespace

StatePtr parse_formula(std::string_view text) { return FormulaParser(text).whole_state(); }

PathPtr parse_path_formula(std::string_view text) { return FormulaParser(text).whole_path(); }

std::string to_string(const StateFormula& f) {
  switch (f.kind) {
    case StateFormula::Kind::True:
      return "true";
    case StateFormula::Kind::Atom:
      return f.atom;
    case StateFormula::Kind::Not:
      if (f.lhs->kind == StateFormula::Kind::True) return "false";
      return "!" + paren(*f.lhs);
    case StateFormula::Kind::And:
      return paren(*f.lhs) + " & " + paren(*f.rhs);
    case StateFormula::Kind::Fidelity:
      return "F" + to_string(f.cmp) + to_string(f.tau) + " [ " + to_string(*f.path) + " ]";
  }
  return "?";
}

std::string to_string(const PathFormula& f) {
  switch (f.kind) {
    case PathFormula::Kind::Next:
      return "X " + paren(*f.lhs);
    case PathFormula::Kind::BoundedUntil:
      return paren(*f.lhs) + " U<=" + std::to_string(f.bound) + " " + paren(*f.rhs);
    case PathFormula::Kind::Until:
      return paren(*f.lhs) + " U " + paren(*f.rhs);
  }
  return "?";
}

}  // namespace qfid
