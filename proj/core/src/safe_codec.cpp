//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "safekit/safe.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "safekit/error.hpp"
#include "safekit/random.hpp"
#include "safekit/smiles.hpp"

namespace safekit {

SafeString::SafeString(std::string text): text_(std::move(text)) {
  std::map<int, std::size_t> open;
  std::uint32_t block = 0;
  std::size_t block_start = 0;
  bool in_bracket = false;
  for (std::size_t i = 0; i < text_.size(); ++i) {
    const char c = text_[i];
    if (in_bracket) {
      in_bracket = c != ']';
      continue;
    }
    if (c == '[') {
      in_bracket = true;
      continue;
    }
    if (c == '.') {
      blocks_.push_back(text_.substr(block_start, i - block_start));
      block_start = i + 1;
      ++block;
      continue;
    }
    int digit = -1;
    const std::size_t at = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = c - '0';
    } else if (c == '%' && i + 2 < text_.size()
               && std::isdigit(static_cast<unsigned char>(text_[i + 1]))
               && std::isdigit(static_cast<unsigned char>(text_[i + 2]))) {
      digit = (text_[i + 1] - '0') * 10 + (text_[i + 2] - '0');
      i += 2;
    }
    if (digit < 0)
      continue;
    const DigitPosition pos { block, static_cast<std::uint32_t>(at - block_start) };
    auto it = open.find(digit);
    if (it == open.end()) {
      open.emplace(digit, links_.size());
      links_.push_back({ digit, pos, std::nullopt });
    } else {
      links_[it->second].second = pos;
      open.erase(it);
    }
  }
  blocks_.push_back(text_.substr(block_start));
}

bool SafeString::closed() const {
  return std::all_of(links_.begin(), links_.end(),
                     [](const DigitLink &l) { return l.second.has_value(); });
}

std::vector<int> SafeString::open_digits() const {
  std::vector<int> digits;
  for (const DigitLink &l: links_) {
    if (!l.second)
      digits.push_back(l.digit);
  }
  return digits;
}

namespace {

constexpr int kMaxDigit = 99;

// Canonical traversal of one fragment with its attachment wildcards left out.
struct BlockLayout {
  std::vector<std::uint32_t> ranks;
  SmilesWriteOptions options;
  SmilesWriteTrace trace;
};

BlockLayout layout_block(const MolGraph &g, const std::vector<bool> &omit) {
  BlockLayout layout;
  layout.ranks = canonical_ranks(g);
  layout.options.omit = omit;
  layout.options.ranks = layout.ranks;
  write_smiles(g, layout.options, &layout.trace);
  return layout;
}

class DigitAllocator {
public:
  explicit DigitAllocator(const std::set<int> &excluded): excluded_(excluded) { }

  int next() {
    while (next_ <= kMaxDigit && excluded_.count(next_))
      ++next_;
    if (next_ > kMaxDigit)
      throw Error(ErrorKind::kFragmentationFailure, "more than 99 attachment digits needed");
    return next_++;
  }

private:
  const std::set<int> &excluded_;
  int next_ = 1;
};

// Wildcard neighbors of `atom` that the block writes as attachment digits,
// in canonical rank order.
std::vector<std::uint32_t> attachments_of(const MolGraph &g, std::uint32_t atom,
                                          const std::vector<bool> &omit,
                                          const std::vector<std::uint32_t> &ranks) {
  std::vector<std::uint32_t> out;
  for (Neighbor nb: g.neighbors(atom)) {
    if (omit[nb.atom])
      out.push_back(nb.atom);
  }
  std::sort(out.begin(), out.end(),
            [&](std::uint32_t a, std::uint32_t b) { return ranks[a] < ranks[b]; });
  return out;
}

std::uint32_t anchor_of(const MolGraph &g, std::uint32_t wildcard) {
  return g.neighbors(wildcard)[0].atom;
}

}  // namespace

SafeString encode_fragments(const FragmentSet &set,
                            const std::vector<std::uint32_t> &block_order) {
  const auto nfrag = set.fragments.size();
  std::vector<std::vector<bool>> omit(nfrag);
  std::vector<std::vector<int>> pair_of(nfrag);
  for (std::size_t f = 0; f < nfrag; ++f) {
    const Fragment &frag = set.fragments[f];
    omit[f].assign(frag.graph.num_atoms(), false);
    pair_of[f].assign(frag.graph.num_atoms(), -1);
    for (std::uint32_t a = 0; a < frag.graph.num_atoms(); ++a)
      omit[f][a] = frag.source_atoms[a] == kNoSourceAtom;
  }
  for (std::size_t p = 0; p < set.pairs.size(); ++p) {
    pair_of[set.pairs[p].first.fragment][set.pairs[p].first.atom] = static_cast<int>(p);
    pair_of[set.pairs[p].second.fragment][set.pairs[p].second.atom] = static_cast<int>(p);
  }

  std::vector<BlockLayout> layouts;
  layouts.reserve(nfrag);
  std::set<int> ring_digits;
  for (std::size_t f = 0; f < nfrag; ++f) {
    layouts.push_back(layout_block(set.fragments[f].graph, omit[f]));
    ring_digits.insert(layouts.back().trace.ring_digits.begin(),
                       layouts.back().trace.ring_digits.end());
  }

  DigitAllocator digits(ring_digits);
  std::vector<int> pair_digit(set.pairs.size(), 0);
  std::string text;
  for (std::size_t k = 0; k < block_order.size(); ++k) {
    const auto f = block_order[k];
    const MolGraph &g = set.fragments[f].graph;
    BlockLayout &layout = layouts[f];
    layout.options.external.assign(g.num_atoms(), {});
    for (auto atom: layout.trace.atom_order) {
      for (auto w: attachments_of(g, atom, omit[f], layout.ranks)) {
        const int p = pair_of[f][w];
        if (p < 0)
          throw Error(ErrorKind::kFragmentationFailure, "attachment without a partner");
        if (pair_digit[p] == 0)
          pair_digit[p] = digits.next();
        const AttachmentPair &pair = set.pairs[p];
        const AttachmentRef other =
            pair.first == AttachmentRef { f, w } ? pair.second : pair.first;
        const MolGraph &og = set.fragments[other.fragment].graph;
        const bool both_aromatic =
            g.atom(atom).aromatic && og.atom(anchor_of(og, other.atom)).aromatic;
        layout.options.external[atom].push_back(
            { pair_digit[p], BondOrder::kSingle, both_aromatic });
      }
    }
    if (k > 0)
      text += '.';
    layout.options.ranks = layout.ranks;
    text += write_smiles(g, layout.options);
  }
  return SafeString(std::move(text));
}

SafeString encode(const MolGraph &g, FragmentationScheme scheme, BlockOrder order,
                  std::uint64_t seed, const RuleTable &table) {
  const FragmentSet set = fragment(g, eligible_bonds(g, scheme, table));

  struct Key {
    std::uint32_t heavy;
    std::string canonical;
    std::uint32_t index;
  };
  std::vector<Key> keys;
  for (std::uint32_t f = 0; f < set.fragments.size(); ++f) {
    const MolGraph &fg = set.fragments[f].graph;
    keys.push_back({ fg.heavy_atom_count(), canonical_smiles(fg), f });
  }
  std::sort(keys.begin(), keys.end(), [](const Key &a, const Key &b) {
    if (a.heavy != b.heavy)
      return a.heavy > b.heavy;
    if (a.canonical != b.canonical)
      return a.canonical < b.canonical;
    return a.index < b.index;
  });
  std::vector<std::uint32_t> block_order;
  for (const Key &k: keys)
    block_order.push_back(k.index);
  if (order == BlockOrder::kRandomized) {
    Rng rng(seed);
    shuffle(block_order, rng);
  }
  return encode_fragments(set, block_order);
}

MolGraph decode(const SafeString &s) {
  return parse_smiles(s.text());
}

MolGraph decode(std::string_view text) {
  return parse_smiles(text);
}

SafeString randomize_safe(const MolGraph &g, FragmentationScheme scheme,
                          std::uint64_t seed, const RuleTable &table) {
  return encode(g, scheme, BlockOrder::kRandomized, seed, table);
}

bool is_fragmented(const MolGraph &g) {
  return g.component_count() > 1;
}

namespace {

struct PromptBlock {
  const MolGraph *graph;
  std::vector<bool> omit;
  BlockLayout layout;
};

PromptBlock prompt_block(const MolGraph &g) {
  PromptBlock block { &g, std::vector<bool>(g.num_atoms(), false), {} };
  for (const Atom &a: g.atoms()) {
    if (!a.is_wildcard())
      continue;
    if (g.degree(a.index) != 1 || g.atom(g.neighbors(a.index)[0].atom).is_wildcard())
      throw Error(ErrorKind::kBadAttachmentCount,
                  "attachment points must be terminal wildcards on a non-wildcard atom");
    block.omit[a.index] = true;
  }
  block.layout = layout_block(g, block.omit);
  return block;
}

// Writes the blocks with every wildcard turned into a fresh open digit.
Prompt write_prompt(std::vector<PromptBlock> &blocks, PromptTask task) {
  std::set<int> ring_digits;
  for (const PromptBlock &b: blocks)
    ring_digits.insert(b.layout.trace.ring_digits.begin(), b.layout.trace.ring_digits.end());
  DigitAllocator digits(ring_digits);
  Prompt prompt;
  prompt.task = task;
  for (PromptBlock &b: blocks) {
    const MolGraph &g = *b.graph;
    b.layout.options.external.assign(g.num_atoms(), {});
    for (auto atom: b.layout.trace.atom_order) {
      for (auto w: attachments_of(g, atom, b.omit, b.layout.ranks)) {
        const auto order = g.bond(*g.bond_between(atom, w)).order;
        const int d = digits.next();
        b.layout.options.external[atom].push_back({ d, order, order != BondOrder::kSingle });
        prompt.open_digits.push_back(d);
      }
    }
    b.layout.options.ranks = b.layout.ranks;
    prompt.text += write_smiles(g, b.layout.options);
    prompt.text += '.';
  }
  return prompt;
}

}  // namespace

Prompt scaffold_prompt(const MolGraph &scaffold) {
  if (scaffold.wildcard_count() == 0)
    throw Error(ErrorKind::kNoAttachmentPoints, "scaffold has no attachment points");
  std::vector<PromptBlock> blocks;
  blocks.push_back(prompt_block(scaffold));
  return write_prompt(blocks, PromptTask::kDecorate);
}

Prompt linker_prompt(const MolGraph &frag_a, const MolGraph &frag_b) {
  if (frag_a.wildcard_count() != 1 || frag_b.wildcard_count() != 1)
    throw Error(ErrorKind::kBadAttachmentCount,
                "linker fragments need exactly one attachment point each");
  std::vector<PromptBlock> blocks;
  blocks.push_back(prompt_block(frag_a));
  blocks.push_back(prompt_block(frag_b));
  return write_prompt(blocks, PromptTask::kLink);
}

}  // namespace safekit
