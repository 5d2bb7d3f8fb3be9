//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "safekit/rings.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace safekit {

namespace internal {

std::vector<bool>
find_cycle_edges(std::uint32_t num_atoms,
                 const std::vector<std::vector<Neighbor>> &adjacency,
                 std::uint32_t num_bonds) {
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();

  std::vector<std::uint32_t> disc(num_atoms, kUnvisited), low(num_atoms, 0);
  std::vector<bool> bridge(num_bonds, false);
  std::uint32_t timer = 0;

  // Iterative Tarjan lowlink; frames hold (atom, parent bond, next neighbor).
  struct Frame {
    std::uint32_t atom;
    std::uint32_t parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;

  for (std::uint32_t root = 0; root < num_atoms; ++root) {
    if (disc[root] != kUnvisited)
      continue;
    disc[root] = low[root] = timer++;
    stack.push_back({ root, kUnvisited, 0 });
    while (!stack.empty()) {
      Frame &f = stack.back();
      const auto &nbrs = adjacency[f.atom];
      if (f.next < nbrs.size()) {
        Neighbor n = nbrs[f.next++];
        if (n.bond == f.parent_bond)
          continue;
        if (disc[n.atom] == kUnvisited) {
          disc[n.atom] = low[n.atom] = timer++;
          stack.push_back({ n.atom, n.bond, 0 });
        } else {
          low[f.atom] = std::min(low[f.atom], disc[n.atom]);
        }
        continue;
      }
      Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        std::uint32_t parent = stack.back().atom;
        low[parent] = std::min(low[parent], low[done.atom]);
        if (low[done.atom] > disc[parent])
          bridge[done.parent_bond] = true;
      }
    }
  }

  std::vector<bool> cycle(num_bonds);
  for (std::uint32_t b = 0; b < num_bonds; ++b)
    cycle[b] = !bridge[b];
  return cycle;
}

}  // namespace internal

RingFlags ring_membership(const MolGraph &g) {
  RingFlags flags;
  flags.atom_in_ring.assign(g.num_atoms(), false);
  flags.bond_in_ring.assign(g.num_bonds(), false);
  for (const Bond &b: g.bonds()) {
    flags.bond_in_ring[b.index] = b.in_ring;
    if (b.in_ring) {
      flags.atom_in_ring[b.begin] = true;
      flags.atom_in_ring[b.end] = true;
    }
  }
  return flags;
}

std::vector<std::uint32_t> smallest_ring_through_bond(const MolGraph &g) {
  std::vector<std::uint32_t> sizes(g.num_bonds(), 0);
  std::vector<std::uint32_t> dist(g.num_atoms());
  std::deque<std::uint32_t> queue;

  for (const Bond &b: g.bonds()) {
    if (!b.in_ring)
      continue;
    // Shortest path begin -> end avoiding this bond, restricted to ring bonds.
    std::fill(dist.begin(), dist.end(), std::numeric_limits<std::uint32_t>::max());
    dist[b.begin] = 0;
    queue.assign(1, b.begin);
    while (!queue.empty()) {
      std::uint32_t a = queue.front();
      queue.pop_front();
      if (a == b.end)
        break;
      for (Neighbor n: g.neighbors(a)) {
        if (n.bond == b.index || !g.bond(n.bond).in_ring)
          continue;
        if (dist[n.atom] == std::numeric_limits<std::uint32_t>::max()) {
          dist[n.atom] = dist[a] + 1;
          queue.push_back(n.atom);
        }
      }
    }
    sizes[b.index] = dist[b.end] + 1;
  }
  return sizes;
}

std::uint32_t largest_smallest_ring(const MolGraph &g) {
  auto sizes = smallest_ring_through_bond(g);
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

}  // namespace safekit
