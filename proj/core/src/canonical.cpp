//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "safekit/smiles.hpp"

namespace safekit {

namespace {

using Ranks = std::vector<std::uint32_t>;

// Leaves explored when tied classes survive refinement. Ties between
// automorphic atoms yield identical strings, so the budget only matters
// for the rare non-automorphic equitable partitions.
constexpr int kLeafBudget = 32;

std::uint64_t atom_invariant(const MolGraph &g, const Atom &a) {
  std::uint64_t key = static_cast<std::uint64_t>(a.element);
  key = (key << 1) | (a.aromatic ? 1 : 0);
  key = (key << 5) | static_cast<std::uint64_t>(a.charge + 16);
  key = (key << 4) | static_cast<std::uint64_t>(std::min(a.total_h(), 15));
  key = (key << 5) | std::min<std::uint64_t>(g.degree(a.index), 31);
  key = (key << 1) | (a.in_ring ? 1 : 0);
  return key;
}

// Dense "number of strictly smaller keys" ranking.
template <class Key>
std::uint32_t assign_ranks(const std::vector<Key> &keys, Ranks &ranks) {
  const auto n = static_cast<std::uint32_t>(keys.size());
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0U);
  std::sort(idx.begin(), idx.end(),
            [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
  std::uint32_t classes = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i == 0 || keys[idx[i - 1]] < keys[idx[i]]) {
      ++classes;
      ranks[idx[i]] = i;
    } else {
      ranks[idx[i]] = ranks[idx[i - 1]];
    }
  }
  return classes;
}

std::uint32_t count_classes(const Ranks &ranks) {
  std::vector<std::uint32_t> sorted = ranks;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::uint32_t>(
      std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

// Iterated neighborhood refinement until the partition is stable.
void refine(const MolGraph &g, Ranks &ranks) {
  const std::uint32_t n = g.num_atoms();
  std::uint32_t classes = count_classes(ranks);
  std::vector<std::vector<std::uint32_t>> keys(n);
  while (classes < n) {
    for (std::uint32_t i = 0; i < n; ++i) {
      auto &k = keys[i];
      k.clear();
      k.push_back(ranks[i]);
      for (Neighbor nb: g.neighbors(i))
        k.push_back(ranks[nb.atom] * 8 + static_cast<std::uint32_t>(g.bond(nb.bond).order));
      std::sort(k.begin() + 1, k.end());
    }
    const std::uint32_t next = assign_ranks(keys, ranks);
    if (next == classes)
      break;
    classes = next;
  }
}

std::optional<std::vector<std::uint32_t>> first_tied_class(const Ranks &ranks) {
  const auto n = static_cast<std::uint32_t>(ranks.size());
  std::vector<std::uint32_t> count(n, 0);
  for (std::uint32_t r: ranks)
    ++count[r];
  for (std::uint32_t r = 0; r < n; ++r) {
    if (count[r] > 1) {
      std::vector<std::uint32_t> members;
      for (std::uint32_t i = 0; i < n; ++i) {
        if (ranks[i] == r)
          members.push_back(i);
      }
      return members;
    }
  }
  return std::nullopt;
}

struct Search {
  const MolGraph &g;
  int leaves_left = kLeafBudget;
  std::optional<std::string> best;
  Ranks best_ranks;

  void run(Ranks ranks) {
    refine(g, ranks);
    auto tied = first_tied_class(ranks);
    if (!tied) {
      --leaves_left;
      SmilesWriteOptions opt;
      opt.ranks = ranks;
      std::string s = write_smiles(g, opt);
      if (!best || s < *best) {
        best = std::move(s);
        best_ranks = ranks;
      }
      return;
    }
    for (std::size_t k = 0; k < tied->size(); ++k) {
      if (k > 0 && leaves_left <= 0)
        break;
      Ranks branch = ranks;
      const std::uint32_t r = ranks[(*tied)[k]];
      for (std::uint32_t m: *tied) {
        if (m != (*tied)[k])
          branch[m] = r + 1;
      }
      run(std::move(branch));
    }
  }
};

Search canonical_search(const MolGraph &g) {
  Search search { g, kLeafBudget, std::nullopt, {} };
  Ranks ranks(g.num_atoms());
  std::vector<std::uint64_t> keys(g.num_atoms());
  for (const Atom &a: g.atoms())
    keys[a.index] = atom_invariant(g, a);
  assign_ranks(keys, ranks);
  search.run(std::move(ranks));
  return search;
}

}  // namespace

std::vector<std::uint32_t> canonical_ranks(const MolGraph &g) {
  if (g.empty())
    return {};
  return canonical_search(g).best_ranks;
}

std::string canonical_smiles(const MolGraph &g) {
  if (g.empty())
    return {};
  return *canonical_search(g).best;
}

}  // namespace safekit
