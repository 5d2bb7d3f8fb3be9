//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_SAFE_HPP_
#define SAFEKIT_SAFE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "safekit/fragmenter.hpp"
#include "safekit/molgraph.hpp"

namespace safekit {

struct DigitPosition {
  std::uint32_t block = 0;
  // Offset of the digit label ('%' for two-digit labels) within the block.
  std::uint32_t offset = 0;
};

// One ring-closure pairing as the parser resolves it. Pairings whose ends
// sit in different blocks are attachment bonds; an unmatched opening is an
// open attachment point.
struct DigitLink {
  int digit = 0;
  DigitPosition first;
  std::optional<DigitPosition> second;

  bool spans_blocks() const { return second && second->block != first.block; }
};

class SafeString {
public:
  SafeString() = default;
  // Splits on top-level '.' and pairs ring-closure digits. Does not parse
  // atoms; decode() does that.
  explicit SafeString(std::string text);

  const std::string &text() const { return text_; }
  const std::vector<std::string> &blocks() const { return blocks_; }
  const std::vector<DigitLink> &links() const { return links_; }

  // Every digit appears exactly twice (no open pairing).
  bool closed() const;
  // Digits still open at the end of the text, in order of appearance.
  std::vector<int> open_digits() const;

private:
  std::string text_;
  std::vector<std::string> blocks_;
  std::vector<DigitLink> links_;
};

enum class BlockOrder : std::uint8_t {
  kCanonical,
  kRandomized,
};

// Fragments g with the scheme and writes one block per fragment. Blocks are
// canonical fragment strings whose attachment wildcards are replaced by
// ring-closure digits shared with the partner block. Attachment digits
// avoid every digit used for ring closures inside any block and are never
// reused. Canonical order sorts by heavy-atom count (descending) then by
// canonical fragment string; randomized order shuffles that with the seed.
//
// Throws kFragmentationFailure when fragmentation fails.
SafeString encode(const MolGraph &g, FragmentationScheme scheme,
                  BlockOrder order = BlockOrder::kCanonical, std::uint64_t seed = 0,
                  const RuleTable &table = RuleTable::defaults());

// Writes an existing fragmentation as SAFE with the given block order
// (block_order[k] is the fragment placed k-th).
SafeString encode_fragments(const FragmentSet &set,
                            const std::vector<std::uint32_t> &block_order);

MolGraph decode(const SafeString &s);
MolGraph decode(std::string_view text);

SafeString randomize_safe(const MolGraph &g, FragmentationScheme scheme,
                          std::uint64_t seed,
                          const RuleTable &table = RuleTable::defaults());

bool is_fragmented(const MolGraph &g);

enum class PromptTask : std::uint8_t {
  kDecorate,
  kLink,
};

struct Prompt {
  // Prefix ending in '.', ready for completion.
  std::string text;
  std::vector<int> open_digits;
  PromptTask task = PromptTask::kDecorate;
};

// Scaffold block with its wildcards turned into open digits. Throws
// kNoAttachmentPoints when the scaffold has no wildcard, kBadAttachmentCount
// when a wildcard is not a terminal atom on a non-wildcard neighbor.
Prompt scaffold_prompt(const MolGraph &scaffold);

// Two fragment blocks with one open digit each. Throws kBadAttachmentCount
// unless each fragment has exactly one wildcard.
Prompt linker_prompt(const MolGraph &frag_a, const MolGraph &frag_b);

}  // namespace safekit

#endif  // SAFEKIT_SAFE_HPP_
