#pragma once

// Tokenizer and term reader for the Prolog-like syntax shared by
// interpretation files, template declarations and printed queries.

#include <string>
#include <string_view>
#include <vector>

namespace pct::detail {

enum class TokenKind { identifier, variable, number, punct, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  const Token& peek();
  Token next();
  /// Consumes the punctuation `c` or throws ParseError.
  void expect(char c);
  bool accept(char c);
  bool at_end() { return peek().kind == TokenKind::end; }
  [[noreturn]] void fail(const std::string& what, const Token& at) const;

 private:
  Token scan();
  void skip_blank();

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  bool has_peeked_ = false;
  Token peeked_;
};

struct RawTerm {
  TokenKind kind = TokenKind::identifier;  // identifier, variable or number
  std::string text;
  std::vector<RawTerm> args;  // non-empty only for compound terms
  bool compound = false;
  int line = 1;
  int column = 1;
};

/// Reads one term: a constant, a variable, or name(arg, ...).
RawTerm read_term(Lexer& lexer);

/// True for identifier chars after the first one.
bool is_name_char(char c);

}  // namespace pct::detail
