#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tagmap/diagnostic.hpp"

namespace tagmap {

enum class TokenKind {
  name,      // identifier or numeral: [A-Za-z0-9_$-]+
  quoted,    // '...' or "..."; text holds the unquoted contents
  lbracket,  // [
  rbracket,  // ]
  lparen,
  rparen,
  lbrace,
  rbrace,
  comma,
  dot,
  amp,       // &
  bar,       // |
  bang,      // !
  eq,        // =
  neq,       // !=
  arrow,     // =>
  out_of,    // <<
  into,      // >>
  end,
  invalid,
};

struct LexToken {
  TokenKind kind = TokenKind::end;
  std::string text;
  SourceSpan span;
};

std::string_view token_kind_name(TokenKind kind);

/// Tokenises the shared surface syntax of tagset files, rule files and
/// specifications. `#` starts a comment running to end of line. Lexical
/// errors become `invalid` tokens so the parsers report them with context.
std::vector<LexToken> tokenize(std::string_view source);

/// Cursor over a token vector with one-token lookahead.
class TokenStream {
 public:
  explicit TokenStream(std::vector<LexToken> tokens);

  const LexToken& peek(std::size_t ahead = 0) const;
  const LexToken& next();
  bool at(TokenKind kind) const { return peek().kind == kind; }
  bool accept(TokenKind kind);
  bool at_end() const { return at(TokenKind::end); }
  std::size_t position() const { return pos_; }
  void seek(std::size_t pos) { pos_ = pos; }

 private:
  std::vector<LexToken> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace tagmap
