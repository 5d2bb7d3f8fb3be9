//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_TOKENIZER_HPP_
#define SAFEKIT_TOKENIZER_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace safekit {

enum class TokenKind : std::uint8_t {
  kAtom,
  kBracketAtom,
  kBond,
  kDigit,
  kPercentDigit,
  kBranchOpen,
  kBranchClose,
  kDot,
  kBos,
  kEos,
};

enum class Notation : std::uint8_t {
  kSmiles,
  kSafe,
};

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::kAtom;

  bool operator==(const Token &) const = default;
};

// Maximal munch: bracket atoms, Cl, Br and %nn are single tokens; every
// other character is its own token. SMILES and SAFE share the rules.
// Throws kTokenize on an unterminated bracket or a malformed '%'.
std::vector<Token> tokenize(std::string_view text, Notation notation = Notation::kSmiles);

std::vector<std::string> tokenize_surfaces(std::string_view text);

std::string detokenize(std::span<const Token> tokens);

class Vocabulary {
public:
  static constexpr std::uint32_t kBos = 0;
  static constexpr std::uint32_t kEos = 1;
  static constexpr std::uint32_t kUnk = 2;
  static constexpr std::string_view kBosSurface = "<bos>";
  static constexpr std::string_view kEosSurface = "<eos>";
  static constexpr std::string_view kUnkSurface = "<unk>";

  Vocabulary();

  // Special entries first, then the corpus tokens in sorted order.
  static Vocabulary build(std::span<const std::string> lines);
  // Special entries first, then `tokens` in the given order (specials in
  // `tokens` are skipped).
  static Vocabulary from_tokens(std::span<const std::string> tokens);

  std::uint32_t size() const { return static_cast<std::uint32_t>(surfaces_.size()); }
  std::optional<std::uint32_t> find(std::string_view surface) const;
  // kUnk when the surface is unknown.
  std::uint32_t id(std::string_view surface) const;
  const std::string &surface(std::uint32_t id) const { return surfaces_[id]; }
  std::span<const std::string> surfaces() const { return surfaces_; }

  // Token ids of a text, without bos/eos; unknown tokens map to kUnk.
  std::vector<std::uint32_t> encode(std::string_view text) const;
  // Whether every token of the text is in the vocabulary.
  bool covers(std::string_view text) const;
  std::string decode(std::span<const std::uint32_t> ids) const;

  // One token per line, specials included.
  void save(const std::filesystem::path &path) const;
  static Vocabulary load(const std::filesystem::path &path);

  bool operator==(const Vocabulary &other) const { return surfaces_ == other.surfaces_; }

private:
  void add(std::string surface);

  std::vector<std::string> surfaces_;
  std::map<std::string, std::uint32_t, std::less<>> index_;
};

}  // namespace safekit

#endif  // SAFEKIT_TOKENIZER_HPP_
