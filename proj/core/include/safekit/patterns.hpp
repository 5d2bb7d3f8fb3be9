//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_PATTERNS_HPP_
#define SAFEKIT_PATTERNS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "safekit/molgraph.hpp"

namespace safekit {

// Procedural atom environment test, referenced from pattern text as
// `{name}`. Used for chemical environments that would otherwise need
// recursive SMARTS.
using AtomPredicate = std::function<bool(const MolGraph &, std::uint32_t)>;

class PredicateRegistry {
public:
  void add(std::string name, AtomPredicate predicate);
  std::shared_ptr<const AtomPredicate> find(std::string_view name) const;

private:
  std::map<std::string, std::shared_ptr<const AtomPredicate>, std::less<>> table_;
};

enum class AtomPrimitiveKind : std::uint8_t {
  kAny,            // *
  kSymbol,         // C, c, Cl, ... (element plus aromaticity)
  kAtomicNumber,   // #6
  kAromatic,       // a
  kAliphatic,      // A
  kInRing,         // R (R0 when negated)
  kDegree,         // D<n>
  kCharge,         // +<n> / -<n>
  kTotalH,         // H<n>
  kNamed,          // {name}
};

struct AtomPrimitive {
  AtomPrimitiveKind kind = AtomPrimitiveKind::kAny;
  bool negated = false;
  int value = 0;
  Element element = Element::kC;
  bool aromatic = false;
  std::string name;
  std::shared_ptr<const AtomPredicate> predicate;
};

// Conjunction of primitives. An attachment atom is a wildcard that stands
// for "some substituent here"; several attachment atoms may share a target.
struct AtomPattern {
  std::vector<AtomPrimitive> terms;
  bool attachment = false;

  bool is_wildcard() const;
  bool matches(const MolGraph &g, std::uint32_t atom) const;
};

enum class BondPrimitiveKind : std::uint8_t {
  kAny,       // ~
  kSingle,    // -
  kDouble,    // =
  kTriple,    // #
  kAromatic,  // :
  kInRing,    // @
};

struct BondPrimitive {
  BondPrimitiveKind kind = BondPrimitiveKind::kAny;
  bool negated = false;
};

// Without any order primitive a bond pattern means "single or aromatic".
struct BondPattern {
  std::vector<BondPrimitive> terms;

  bool has_order_term() const;
  bool matches(const Bond &b) const;
};

struct QueryBond {
  std::uint32_t begin;
  std::uint32_t end;
  BondPattern pattern;
};

class QueryGraph {
public:
  std::uint32_t add_atom(AtomPattern p);
  void add_bond(std::uint32_t a, std::uint32_t b, BondPattern p);

  std::uint32_t num_atoms() const {
    return static_cast<std::uint32_t>(atoms_.size());
  }
  std::uint32_t num_bonds() const {
    return static_cast<std::uint32_t>(bonds_.size());
  }
  const AtomPattern &atom(std::uint32_t i) const { return atoms_[i]; }
  const QueryBond &bond(std::uint32_t i) const { return bonds_[i]; }
  std::span<const Neighbor> neighbors(std::uint32_t i) const {
    return adjacency_[i];
  }
  bool connected() const;

private:
  std::vector<AtomPattern> atoms_;
  std::vector<QueryBond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

// Parses the supported SMARTS subset: SMILES skeleton (branches, ring
// closures) with primitives * a A R D<n> H<n> #<n> +/-<n> {name}, negation
// with '!', conjunction with ';' or '&', bond primitives - = # : ~ @.
// Throws kSyntax, or kUnsupportedPrimitive for constructs outside the
// subset (recursive SMARTS, OR lists, '.' components, chirality).
QueryGraph parse_pattern(std::string_view text,
                         const PredicateRegistry *registry = nullptr);

// query atom index -> target atom index
using MatchMapping = std::vector<std::uint32_t>;

struct MatchOptions {
  // Stop after this many mappings; 0 means enumerate all.
  std::size_t max_matches = 0;
};

// Backtracking subgraph monomorphism. Mappings come out in a deterministic
// order for deterministic inputs.
std::vector<MatchMapping> match_all(const QueryGraph &q, const MolGraph &g,
                                    const MatchOptions &options = {});

bool has_substructure(const QueryGraph &q, const MolGraph &g);

// Query that matches a molecule with identical atoms (element, aromaticity,
// charge, hydrogens, degree) and bond orders.
QueryGraph exact_query(const MolGraph &g);

// Exact graph isomorphism via a degree-constrained monomorphism search on
// graphs of equal size.
bool is_isomorphic(const MolGraph &a, const MolGraph &b);

// Query for a scaffold or fragment constraint: wildcards become attachment
// atoms joined by any-order bonds; every other atom matches on element and
// aromaticity (and charge when non-zero).
QueryGraph scaffold_query(const MolGraph &scaffold);

}  // namespace safekit

#endif  // SAFEKIT_PATTERNS_HPP_
