#pragma once

// Tokeniser shared by the model, formula and scalar-expression parsers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qfid {

enum class TokKind { Ident, Number, Symbol, Newline, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Splits text into identifiers, unsigned numbers (integer or decimal),
/// operators and newlines. `#` starts a comment running to end of line.
/// Newlines inside (), [] are dropped; elsewhere they are kept only when
/// `keep_newlines` is set.
class Lexer {
 public:
  explicit Lexer(std::string_view text, bool keep_newlines = false);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == TokKind::End; }

  bool is_symbol(std::string_view s) const { return peek().kind == TokKind::Symbol && peek().text == s; }
  bool is_ident(std::string_view s) const { return peek().kind == TokKind::Ident && peek().text == s; }
  bool accept_symbol(std::string_view s);
  bool accept_ident(std::string_view s);
  void expect_symbol(std::string_view s);
  void expect_ident(std::string_view s);
  std::string expect_identifier(std::string_view what);
  void skip_newlines();

  [[noreturn]] void fail(const std::string& msg) const;
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const;

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace qfid
