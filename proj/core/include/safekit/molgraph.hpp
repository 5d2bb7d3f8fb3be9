//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_MOLGRAPH_HPP_
#define SAFEKIT_MOLGRAPH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "safekit/element.hpp"

namespace safekit {

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

// Contribution of a bond to an atom's valence; aromatic counts as 1 and
// the aromatic pi electron is accounted for separately.
constexpr int valence_contribution(BondOrder order) {
  return order == BondOrder::kAromatic ? 1 : static_cast<int>(order);
}

struct Atom {
  Element element = Element::kC;
  bool aromatic = false;
  int charge = 0;
  // Set only for bracket atoms; otherwise hydrogens are implicit.
  std::optional<int> explicit_h;
  int implicit_h = 0;
  bool in_ring = false;
  std::uint32_t index = 0;

  int total_h() const { return explicit_h ? *explicit_h : implicit_h; }
  bool is_wildcard() const { return element == Element::kWildcard; }
};

struct Bond {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  BondOrder order = BondOrder::kSingle;
  bool in_ring = false;
  std::uint32_t index = 0;

  std::uint32_t other(std::uint32_t atom) const {
    return atom == begin ? end : begin;
  }
};

struct Neighbor {
  std::uint32_t atom;
  std::uint32_t bond;
};

// An attributed molecular graph. Instances are immutable once built; use
// MolBuilder to construct one. Construction validates valences, derives
// implicit hydrogens, ring membership and connected components.
class MolGraph {
public:
  MolGraph() = default;

  std::uint32_t num_atoms() const {
    return static_cast<std::uint32_t>(atoms_.size());
  }
  std::uint32_t num_bonds() const {
    return static_cast<std::uint32_t>(bonds_.size());
  }
  bool empty() const { return atoms_.empty(); }

  const Atom &atom(std::uint32_t i) const { return atoms_[i]; }
  const Bond &bond(std::uint32_t i) const { return bonds_[i]; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const Bond> bonds() const { return bonds_; }
  std::span<const Neighbor> neighbors(std::uint32_t i) const {
    return adjacency_[i];
  }
  std::uint32_t degree(std::uint32_t i) const {
    return static_cast<std::uint32_t>(adjacency_[i].size());
  }

  std::optional<std::uint32_t> bond_between(std::uint32_t a,
                                            std::uint32_t b) const;

  // Sum of bond valence contributions (aromatic = 1) around an atom.
  int bond_sum(std::uint32_t i) const;

  std::uint32_t component_count() const { return component_count_; }
  // Component id per atom, numbered in order of lowest atom index.
  std::span<const std::uint32_t> component_ids() const { return component_; }

  std::uint32_t heavy_atom_count() const;
  std::uint32_t wildcard_count() const;

private:
  friend class MolBuilder;

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::uint32_t> component_;
  std::uint32_t component_count_ = 0;
};

struct AtomSpec {
  Element element = Element::kC;
  bool aromatic = false;
  int charge = 0;
  std::optional<int> explicit_h;
};

// Accumulates atoms and bonds, then validates them into a MolGraph.
// add_bond() throws kSyntax on self loops or duplicate bonds; build()
// throws kValence when the valence table is violated.
class MolBuilder {
public:
  std::uint32_t add_atom(const AtomSpec &spec);
  std::uint32_t add_bond(std::uint32_t a, std::uint32_t b, BondOrder order);
  bool has_bond(std::uint32_t a, std::uint32_t b) const;

  std::uint32_t num_atoms() const {
    return static_cast<std::uint32_t>(atoms_.size());
  }
  const AtomSpec &atom(std::uint32_t i) const { return atoms_[i]; }

  MolGraph build() const;

private:
  std::vector<AtomSpec> atoms_;
  struct PendingBond {
    std::uint32_t a, b;
    BondOrder order;
  };
  std::vector<PendingBond> bonds_;
  std::vector<std::vector<std::uint32_t>> partners_;
};

// Copies a graph's atoms (with their hydrogen counts frozen as explicit)
// into a builder so that it can be edited and rebuilt.
MolBuilder to_builder(const MolGraph &g, bool freeze_hydrogens = false);

}  // namespace safekit

#endif  // SAFEKIT_MOLGRAPH_HPP_
