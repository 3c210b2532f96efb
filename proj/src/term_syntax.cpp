#include "term_syntax.hpp"

#include <cctype>

#include "pct/error.hpp"

namespace pct::detail {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

void Lexer::skip_blank() {
  while (pos_ < text_.size()) {
    const char c = text_[pos_];
    if (c == '%') {
      while (pos_ < text_.size() && text_[pos_] != '\n') {
        ++pos_;
      }
    } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      if (c == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    } else {
      return;
    }
  }
}

Token Lexer::scan() {
  skip_blank();
  Token tok;
  tok.line = line_;
  tok.column = column_;
  if (pos_ >= text_.size()) {
    tok.kind = TokenKind::end;
    return tok;
  }
  const std::size_t start = pos_;
  const char c = text_[pos_];
  auto advance_while = [&](auto pred) {
    while (pos_ < text_.size() && pred(text_[pos_])) {
      ++pos_;
    }
  };

  const bool signed_number = c == '-' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1]);
  if (is_digit(c) || signed_number) {
    ++pos_;
    advance_while(is_digit);
    // A period is part of the number only when a digit follows it.
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' && is_digit(text_[pos_ + 1])) {
      ++pos_;
      advance_while(is_digit);
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) {
        ++look;
      }
      if (look < text_.size() && is_digit(text_[look])) {
        pos_ = look;
        advance_while(is_digit);
      }
    }
    tok.kind = TokenKind::number;
  } else if (c == '\'') {
    ++pos_;
    std::string value;
    while (pos_ < text_.size() && text_[pos_] != '\'') {
      if (text_[pos_] == '\n') {
        fail("unterminated quoted atom", tok);
      }
      value += text_[pos_++];
    }
    if (pos_ >= text_.size()) {
      fail("unterminated quoted atom", tok);
    }
    ++pos_;
    column_ += static_cast<int>(pos_ - start);
    tok.kind = TokenKind::identifier;
    tok.text = std::move(value);
    return tok;
  } else if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
    advance_while(is_name_char);
    tok.kind = (std::isupper(static_cast<unsigned char>(c)) != 0 || c == '_')
                   ? TokenKind::variable
                   : TokenKind::identifier;
  } else {
    ++pos_;
    tok.kind = TokenKind::punct;
  }
  tok.text = std::string(text_.substr(start, pos_ - start));
  column_ += static_cast<int>(pos_ - start);
  return tok;
}

const Token& Lexer::peek() {
  if (!has_peeked_) {
    peeked_ = scan();
    has_peeked_ = true;
  }
  return peeked_;
}

Token Lexer::next() {
  if (has_peeked_) {
    has_peeked_ = false;
    return std::move(peeked_);
  }
  return scan();
}

bool Lexer::accept(char c) {
  const Token& tok = peek();
  if (tok.kind == TokenKind::punct && tok.text.size() == 1 && tok.text[0] == c) {
    next();
    return true;
  }
  return false;
}

void Lexer::expect(char c) {
  if (!accept(c)) {
    const Token& tok = peek();
    fail(std::string("expected '") + c + "' but found " +
             (tok.kind == TokenKind::end ? std::string("end of input") : "'" + tok.text + "'"),
         tok);
  }
}

void Lexer::fail(const std::string& what, const Token& at) const {
  throw ParseError(what, at.line, at.column);
}

RawTerm read_term(Lexer& lexer) {
  Token tok = lexer.next();
  RawTerm term;
  term.line = tok.line;
  term.column = tok.column;
  switch (tok.kind) {
    case TokenKind::identifier:
    case TokenKind::variable:
    case TokenKind::number:
      term.kind = tok.kind;
      term.text = std::move(tok.text);
      break;
    case TokenKind::end:
      lexer.fail("unexpected end of input", tok);
    case TokenKind::punct:
      lexer.fail("unexpected '" + tok.text + "'", tok);
  }
  if (term.kind == TokenKind::identifier && lexer.accept('(')) {
    term.compound = true;
    if (!lexer.accept(')')) {
      do {
        term.args.push_back(read_term(lexer));
      } while (lexer.accept(','));
      lexer.expect(')');
    }
  }
  return term;
}

}  // namespace pct::detail
