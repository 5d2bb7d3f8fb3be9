//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "safekit/tokenizer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "safekit/error.hpp"

namespace safekit {

std::vector<Token> tokenize(std::string_view text, Notation /*notation*/) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '[') {
      const auto close = text.find(']', i);
      if (close == std::string_view::npos)
        throw Error(ErrorKind::kTokenize, "unterminated bracket atom in '"
                                              + std::string(text) + "'");
      out.push_back({ std::string(text.substr(i, close - i + 1)), TokenKind::kBracketAtom });
      i = close + 1;
      continue;
    }
    if (c == '%') {
      if (i + 2 >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i + 1]))
          || !std::isdigit(static_cast<unsigned char>(text[i + 2])))
        throw Error(ErrorKind::kTokenize, "'%' must be followed by two digits in '"
                                              + std::string(text) + "'");
      out.push_back({ std::string(text.substr(i, 3)), TokenKind::kPercentDigit });
      i += 3;
      continue;
    }
    if ((c == 'C' || c == 'B') && i + 1 < text.size()
        && text[i + 1] == (c == 'C' ? 'l' : 'r')) {
      out.push_back({ std::string(text.substr(i, 2)), TokenKind::kAtom });
      i += 2;
      continue;
    }
    TokenKind kind = TokenKind::kAtom;
    switch (c) {
    case '-':
    case '=':
    case '#':
    case ':':
    case '~':
    case '/':
    case '\\':
      kind = TokenKind::kBond;
      break;
    case '(':
      kind = TokenKind::kBranchOpen;
      break;
    case ')':
      kind = TokenKind::kBranchClose;
      break;
    case '.':
      kind = TokenKind::kDot;
      break;
    default:
      if (std::isdigit(static_cast<unsigned char>(c)))
        kind = TokenKind::kDigit;
      break;
    }
    out.push_back({ std::string(1, c), kind });
    ++i;
  }
  return out;
}

std::vector<std::string> tokenize_surfaces(std::string_view text) {
  std::vector<std::string> out;
  for (Token &t: tokenize(text))
    out.push_back(std::move(t.surface));
  return out;
}

std::string detokenize(std::span<const Token> tokens) {
  std::string out;
  for (const Token &t: tokens) {
    if (t.kind != TokenKind::kBos && t.kind != TokenKind::kEos)
      out += t.surface;
  }
  return out;
}

Vocabulary::Vocabulary() {
  add(std::string(kBosSurface));
  add(std::string(kEosSurface));
  add(std::string(kUnkSurface));
}

void Vocabulary::add(std::string surface) {
  if (index_.count(surface))
    return;
  index_.emplace(surface, size());
  surfaces_.push_back(std::move(surface));
}

Vocabulary Vocabulary::build(std::span<const std::string> lines) {
  std::set<std::string> seen;
  for (const std::string &line: lines) {
    for (std::string &s: tokenize_surfaces(line))
      seen.insert(std::move(s));
  }
  Vocabulary v;
  for (const std::string &s: seen)
    v.add(s);
  return v;
}

Vocabulary Vocabulary::from_tokens(std::span<const std::string> tokens) {
  Vocabulary v;
  for (const std::string &s: tokens)
    v.add(s);
  return v;
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view surface) const {
  auto it = index_.find(surface);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

std::uint32_t Vocabulary::id(std::string_view surface) const {
  return find(surface).value_or(kUnk);
}

std::vector<std::uint32_t> Vocabulary::encode(std::string_view text) const {
  std::vector<std::uint32_t> ids;
  for (const Token &t: tokenize(text))
    ids.push_back(id(t.surface));
  return ids;
}

bool Vocabulary::covers(std::string_view text) const {
  for (const Token &t: tokenize(text)) {
    if (!find(t.surface))
      return false;
  }
  return true;
}

std::string Vocabulary::decode(std::span<const std::uint32_t> ids) const {
  std::string out;
  for (auto id: ids) {
    if (id != kBos && id != kEos)
      out += surfaces_[id];
  }
  return out;
}

void Vocabulary::save(const std::filesystem::path &path) const {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorKind::kModelFormat, "cannot write vocabulary " + path.string());
  for (const std::string &s: surfaces_)
    out << s << '\n';
}

Vocabulary Vocabulary::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::kModelFormat, "cannot read vocabulary " + path.string());
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (!line.empty())
      tokens.push_back(line);
  }
  if (tokens.size() < 3 || tokens[0] != kBosSurface || tokens[1] != kEosSurface
      || tokens[2] != kUnkSurface)
    throw Error(ErrorKind::kModelFormat, "vocabulary file must start with the special tokens");
  return from_tokens(tokens);
}

}  // namespace safekit
