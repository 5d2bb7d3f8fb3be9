//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_RINGS_HPP_
#define SAFEKIT_RINGS_HPP_

#include <cstdint>
#include <vector>

#include "safekit/molgraph.hpp"

namespace safekit {

struct RingFlags {
  std::vector<bool> atom_in_ring;
  std::vector<bool> bond_in_ring;
};

// A bond lies on a cycle iff it is not a bridge of its component.
RingFlags ring_membership(const MolGraph &g);

// For every bond, the size of the smallest cycle through it (0 for
// acyclic bonds).
std::vector<std::uint32_t> smallest_ring_through_bond(const MolGraph &g);

// Size of the largest ring in a smallest-cycle cover of the ring bonds;
// 0 when the graph is acyclic.
std::uint32_t largest_smallest_ring(const MolGraph &g);

namespace internal {

// Bridge detection over raw adjacency, shared with MolBuilder.
std::vector<bool>
find_cycle_edges(std::uint32_t num_atoms,
                 const std::vector<std::vector<Neighbor>> &adjacency,
                 std::uint32_t num_bonds);

}  // namespace internal

}  // namespace safekit

#endif  // SAFEKIT_RINGS_HPP_
