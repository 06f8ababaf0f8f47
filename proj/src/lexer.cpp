#include "ctxcalc/lexer.hpp"

#include "ctxcalc/errors.hpp"

#include <cctype>
#include <utility>

namespace ctxcalc {

namespace {

struct Spelling {
  std::string_view text;
  TokenKind kind;
};

// Longest spellings first so that prefixes never shadow them.
constexpr Spelling spellings[] = {
    {"<<=", TokenKind::lt_lt_eq},
    {">>=", TokenKind::gt_gt_eq},
    {"<=>", TokenKind::lt_eq_gt},
    {"(+)", TokenKind::oplus},
    {"(-)", TokenKind::ominus},
    {"[&]", TokenKind::bracket_amp},
    {"[+]", TokenKind::bracket_plus},
    {"⊕", TokenKind::oplus},
    {"⊖", TokenKind::ominus},
    {"↑", TokenKind::caret},
    {"↓", TokenKind::bang},
    {"⇔", TokenKind::lt_eq_gt},
    {"⇒", TokenKind::eq_gt},
    {"→", TokenKind::eq_gt},
    {"⇐", TokenKind::lt_eq},
    {"≤", TokenKind::lt_eq},
    {"≥", TokenKind::gt_eq},
    {"≠", TokenKind::bang_eq},
    {"∩", TokenKind::amp},
    {"∪", TokenKind::percent},
    {"⋈", TokenKind::gt_lt},
    {"⊓", TokenKind::bracket_amp},
    {"⊞", TokenKind::bracket_plus},
    {"⊆", TokenKind::lt_lt_eq},
    {"⊇", TokenKind::gt_gt_eq},
    {"⟨", TokenKind::lparen},
    {"⟩", TokenKind::rparen},
    {"∅", TokenKind::empty_set},
    {"==", TokenKind::eq_eq},
    {"=>", TokenKind::eq_gt},
    {"<=", TokenKind::lt_eq},
    {">=", TokenKind::gt_eq},
    {"!=", TokenKind::bang_eq},
    {"><", TokenKind::gt_lt},
    {"..", TokenKind::dot_dot},
    {"(", TokenKind::lparen},
    {")", TokenKind::rparen},
    {"{", TokenKind::lbrace},
    {"}", TokenKind::rbrace},
    {"[", TokenKind::lbracket},
    {"]", TokenKind::rbracket},
    {",", TokenKind::comma},
    {".", TokenKind::dot},
    {"|", TokenKind::bar},
    {"/", TokenKind::slash},
    {"^", TokenKind::caret},
    {"!", TokenKind::bang},
    {"&", TokenKind::amp},
    {"%", TokenKind::percent},
    {"=", TokenKind::eq},
    {"<", TokenKind::lt},
    {">", TokenKind::gt},
    {"+", TokenKind::plus},
    {"-", TokenKind::minus},
    {"*", TokenKind::star},
    {"#", TokenKind::hash},
    {"@", TokenKind::at},
    {";", TokenKind::semicolon},
};

bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

}  // namespace

std::string_view token_name(TokenKind kind) noexcept {
  switch (kind) {
    case TokenKind::end: return "end of input";
    case TokenKind::identifier: return "identifier";
    case TokenKind::integer: return "integer";
    case TokenKind::string: return "string";
    default: break;
  }
  for (const auto& s : spellings) {
    if (s.kind == kind && static_cast<unsigned char>(s.text.front()) < 0x80) return s.text;
  }
  if (kind == TokenKind::colon) return ":";
  return "token";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t column = 1;
  auto advance = [&](std::size_t bytes) {
    for (std::size_t k = 0; k < bytes; ++k) {
      if (!is_continuation(static_cast<unsigned char>(text[i + k]))) ++column;
    }
    i += bytes;
  };

  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    const std::size_t start_col = column;
    const std::size_t start = i;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      advance(j - i);
      out.push_back({TokenKind::identifier, std::string(text.substr(start, j - start)), start_col});
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      advance(j - i);
      out.push_back({TokenKind::integer, std::string(text.substr(start, j - start)), start_col});
      continue;
    }
    if (c == '"') {
      std::string value;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < text.size()) {
        if (text[j] == '\\' && j + 1 < text.size()) {
          value += text[j + 1];
          j += 2;
        } else if (text[j] == '"') {
          closed = true;
          ++j;
          break;
        } else {
          value += text[j++];
        }
      }
      if (!closed) throw Error(ErrorCode::unknown_token, "unterminated string literal", start_col);
      advance(j - i);
      out.push_back({TokenKind::string, std::move(value), start_col});
      continue;
    }
    if (c == ':') {
      advance(1);
      out.push_back({TokenKind::colon, ":", start_col});
      continue;
    }
    bool matched = false;
    for (const auto& s : spellings) {
      if (text.substr(i).starts_with(s.text)) {
        advance(s.text.size());
        out.push_back({s.kind, std::string(s.text), start_col});
        matched = true;
        break;
      }
    }
    if (!matched) {
      std::size_t len = 1;
      while (i + len < text.size() && is_continuation(static_cast<unsigned char>(text[i + len]))) ++len;
      throw Error(ErrorCode::unknown_token, "unknown token '" + std::string(text.substr(i, len)) + "'", start_col);
    }
  }
  out.push_back({TokenKind::end, "", column});
  return out;
}

}  // namespace ctxcalc
