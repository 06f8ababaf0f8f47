#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ctxcalc {

// Tokens are named by glyph; each parser gives them their meaning. Unicode
// operator symbols lex to the same kinds as their ASCII spellings.
enum class TokenKind {
  end,
  identifier,
  integer,
  string,
  lparen,        // (  ⟨
  rparen,        // )  ⟩
  lbrace,        // {
  rbrace,        // }
  lbracket,      // [
  rbracket,      // ]
  comma,         // ,
  dot,           // .
  bar,           // |
  slash,         // /
  oplus,         // (+)  ⊕
  ominus,        // (-)  ⊖
  caret,         // ^    ↑
  bang,          // !    ↓
  lt_eq_gt,      // <=>  ⇔
  eq_gt,         // =>   ⇒  →
  lt_eq,         // <=   ⇐  ≤
  amp,           // &    ∩
  percent,       // %    ∪
  gt_lt,         // ><   ⋈
  bracket_amp,   // [&]  ⊓
  bracket_plus,  // [+]  ⊞
  eq_eq,         // ==
  eq,            // =
  bang_eq,       // !=   ≠
  lt_lt_eq,      // <<=  ⊆
  gt_gt_eq,      // >>=  ⊇
  lt,            // <
  gt,            // >
  gt_eq,         // >=   ≥
  plus,          // +
  minus,         // -
  star,          // *
  hash,          // #
  at,            // @
  semicolon,     // ;
  colon,         // :
  dot_dot,       // ..
  empty_set,     // ∅
};

std::string_view token_name(TokenKind kind) noexcept;

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  std::size_t position = 1;  // 1-based column, counted in code points

  bool is(TokenKind k) const noexcept { return kind == k; }
  bool is_word(std::string_view w) const noexcept { return kind == TokenKind::identifier && text == w; }
};

// The result always ends with a single `end` token. Throws UnknownToken with
// the column of the offending character.
std::vector<Token> tokenize(std::string_view text);

}  // namespace ctxcalc
