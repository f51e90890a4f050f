#include "tagmap/lexer.hpp"

#include <cctype>
#include <utility>

namespace tagmap {

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::name: return "name";
    case TokenKind::quoted: return "quoted string";
    case TokenKind::lbracket: return "'['";
    case TokenKind::rbracket: return "']'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::lbrace: return "'{'";
    case TokenKind::rbrace: return "'}'";
    case TokenKind::comma: return "','";
    case TokenKind::dot: return "'.'";
    case TokenKind::amp: return "'&'";
    case TokenKind::bar: return "'|'";
    case TokenKind::bang: return "'!'";
    case TokenKind::eq: return "'='";
    case TokenKind::neq: return "'!='";
    case TokenKind::arrow: return "'=>'";
    case TokenKind::out_of: return "'<<'";
    case TokenKind::into: return "'>>'";
    case TokenKind::end: return "end of input";
    case TokenKind::invalid: return "invalid token";
  }
  return "?";
}

namespace {

bool is_name_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '$' || c == '-' || u >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<LexToken> run() {
    std::vector<LexToken> out;
    for (;;) {
      skip_space();
      SourcePos start = here();
      if (i_ >= src_.size()) {
        out.push_back({TokenKind::end, "", {start, start}});
        return out;
      }
      out.push_back(lex_one(start));
    }
  }

 private:
  SourcePos here() const { return {line_, col_, i_}; }

  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_space() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  LexToken make(TokenKind kind, SourcePos start, std::size_t width) {
    std::string text(src_.substr(i_, width));
    for (std::size_t k = 0; k < width; ++k) advance();
    return {kind, std::move(text), {start, here()}};
  }

  LexToken lex_one(SourcePos start) {
    char c = src_[i_];
    char n = i_ + 1 < src_.size() ? src_[i_ + 1] : '\0';
    switch (c) {
      case '[': return make(TokenKind::lbracket, start, 1);
      case ']': return make(TokenKind::rbracket, start, 1);
      case '(': return make(TokenKind::lparen, start, 1);
      case ')': return make(TokenKind::rparen, start, 1);
      case '{': return make(TokenKind::lbrace, start, 1);
      case '}': return make(TokenKind::rbrace, start, 1);
      case ',': return make(TokenKind::comma, start, 1);
      case '.': return make(TokenKind::dot, start, 1);
      case '&': return make(TokenKind::amp, start, 1);
      case '|': return make(TokenKind::bar, start, 1);
      case '!': return n == '=' ? make(TokenKind::neq, start, 2) : make(TokenKind::bang, start, 1);
      case '=': return n == '>' ? make(TokenKind::arrow, start, 2) : make(TokenKind::eq, start, 1);
      case '<':
        if (n == '<') return make(TokenKind::out_of, start, 2);
        break;
      case '>':
        if (n == '>') return make(TokenKind::into, start, 2);
        break;
      case '\'':
      case '"':
      case '`':
        return lex_quoted(start, c);
      default:
        break;
    }
    if (is_name_char(c)) {
      std::size_t w = 0;
      while (i_ + w < src_.size() && is_name_char(src_[i_ + w])) ++w;
      return make(TokenKind::name, start, w);
    }
    return make(TokenKind::invalid, start, 1);
  }

  // Backticks may open a quote closed by a straight quote (`NN').
  LexToken lex_quoted(SourcePos start, char open) {
    advance();
    std::string text;
    while (i_ < src_.size() && src_[i_] != '\n') {
      char c = src_[i_];
      if (c == open || (open == '`' && (c == '\'' || c == '`'))) {
        advance();
        return {TokenKind::quoted, std::move(text), {start, here()}};
      }
      text.push_back(c);
      advance();
    }
    return {TokenKind::invalid, "unterminated quoted string", {start, here()}};
  }

  std::string_view src_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

std::vector<LexToken> tokenize(std::string_view source) { return Lexer(source).run(); }

TokenStream::TokenStream(std::vector<LexToken> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.back().kind != TokenKind::end) {
    SourcePos p = tokens_.empty() ? SourcePos{1, 1, 0} : tokens_.back().span.end;
    tokens_.push_back({TokenKind::end, "", {p, p}});
  }
}

const LexToken& TokenStream::peek(std::size_t ahead) const {
  std::size_t k = pos_ + ahead;
  return k < tokens_.size() ? tokens_[k] : tokens_.back();
}

const LexToken& TokenStream::next() {
  const LexToken& t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenStream::accept(TokenKind kind) {
  if (!at(kind)) return false;
  next();
  return true;
}

}  // namespace tagmap
