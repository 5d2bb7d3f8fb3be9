//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_SMILES_HPP_
#define SAFEKIT_SMILES_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "safekit/error.hpp"
#include "safekit/molgraph.hpp"

namespace safekit {

// Parses SMILES restricted to the MOSES element set. Ring-closure digits
// (including %nn) may span '.' separators, which is how SAFE strings encode
// inter-fragment bonds. Stereo and isotope notation are rejected.
//
// Throws Error with kind kSyntax, kUnclosedRing, kValence or
// kUnknownElement.
MolGraph parse_smiles(std::string_view text);

// Non-throwing variant: exactly one of a graph or a typed error.
std::variant<MolGraph, Error> try_parse_smiles(std::string_view text);

// Ring-closure label as written: "7" or "%12".
std::string format_ring_digit(int digit);

// Serializes with a DFS whose roots and neighbor order follow start_order
// (start_order[k] is the k-th preferred atom). Identity order when empty.
std::string write_smiles(const MolGraph &g,
                         std::span<const std::uint32_t> start_order = {});

// Deterministic, permutation-invariant serialization used as the identity
// key for molecules throughout the toolkit.
std::string canonical_smiles(const MolGraph &g);

// Canonical atom ranks (a permutation of 0..n-1).
std::vector<std::uint32_t> canonical_ranks(const MolGraph &g);

// Serialization from a seeded random DFS root and neighbor order.
std::string randomize_smiles(const MolGraph &g, std::uint64_t seed);

// A ring-closure bond to an atom outside the written graph. SAFE blocks use
// these in place of their attachment wildcards.
struct ExternalClosure {
  int digit = 0;
  BondOrder order = BondOrder::kSingle;
  // Emit the bond symbol in front of the digit.
  bool explicit_order = false;
};

struct SmilesWriteOptions {
  // Traversal priority per atom (lower first); identity when empty.
  std::span<const std::uint32_t> ranks;
  // Atoms left out of the output entirely. Empty means none.
  std::vector<bool> omit;
  // Extra closures written after an atom's own ring-closure digits.
  std::vector<std::vector<ExternalClosure>> external;
};

struct SmilesWriteTrace {
  std::vector<std::uint32_t> atom_order;
  std::vector<int> ring_digits;
};

std::string write_smiles(const MolGraph &g, const SmilesWriteOptions &options,
                         SmilesWriteTrace *trace = nullptr);

}  // namespace safekit

#endif  // SAFEKIT_SMILES_HPP_
