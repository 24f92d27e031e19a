#include "qfid/lexer.hpp"

#include <cctype>

#include "qfid/error.hpp"

namespace qfid {

namespace {

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokKind::End:
      return "end of input";
    case TokKind::Newline:
      return "end of line";
    default:
      return "'" + t.text + "'";
  }
}

}  // namespace

Lexer::Lexer(std::string_view text, bool keep_newlines) {
  std::size_t line = 1, col = 1, i = 0;
  int depth = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n') {
      if (keep_newlines && depth == 0 && (toks_.empty() || toks_.back().kind != TokKind::Newline))
        toks_.push_back({TokKind::Newline, "\n", line, col});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{TokKind::Symbol, "", line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      t.kind = TokKind::Ident;
      t.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && text[j] == '.') {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      t.kind = TokKind::Number;
      t.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else {
      static const char* two[] = {"<=", ">=", "!=", "==", "->"};
      std::string_view rest = text.substr(i);
      for (const char* s : two)
        if (rest.substr(0, 2) == s) t.text = s;
      if (t.text.empty()) {
        if (std::string_view("+-*/^()[]{},!&|<>=;").find(c) == std::string_view::npos)
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        t.text = std::string(1, c);
      }
      if (t.text == "(" || t.text == "[") ++depth;
      if ((t.text == ")" || t.text == "]") && depth > 0) --depth;
      advance(t.text.size());
    }
    toks_.push_back(std::move(t));
  }
  toks_.push_back({TokKind::End, "", line, col});
}

const Token& Lexer::peek(std::size_t ahead) const {
  std::size_t k = pos_ + ahead;
  return k < toks_.size() ? toks_[k] : toks_.back();
}

Token Lexer::next() {
  Token t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

bool Lexer::accept_symbol(std::string_view s) {
  if (!is_symbol(s)) return false;
  next();
  return true;
}

bool Lexer::accept_ident(std::string_view s) {
  if (!is_ident(s)) return false;
  next();
  return true;
}

void Lexer::expect_symbol(std::string_view s) {
  if (!accept_symbol(s)) fail("expected '" + std::string(s) + "' but found " + describe(peek()));
}

void Lexer::expect_ident(std::string_view s) {
  if (!accept_ident(s)) fail("expected '" + std::string(s) + "' but found " + describe(peek()));
}

std::string Lexer::expect_identifier(std::string_view what) {
  if (peek().kind != TokKind::Ident) fail("expected " + std::string(what) + " but found " + describe(peek()));
  return next().text;
}

void Lexer::skip_newlines() {
  while (peek().kind == TokKind::Newline) next();
}

void Lexer::fail(const std::string& msg) const { fail_at(peek(), msg); }

void Lexer::fail_at(const Token& t, const std::string& msg) const { throw ParseError(msg, t.line, t.column); }

}  // namespace qfid
