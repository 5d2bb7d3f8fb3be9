//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_FRAGMENTER_HPP_
#define SAFEKIT_FRAGMENTER_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "safekit/molgraph.hpp"
#include "safekit/patterns.hpp"

namespace safekit {

enum class FragmentationScheme : std::uint8_t {
  kHR,
  kBRICS,
  kRECAP,
  kMMPA,
  kRotatable,
};

inline constexpr std::array<FragmentationScheme, 5> kAllSchemes {
  FragmentationScheme::kHR,    FragmentationScheme::kBRICS,
  FragmentationScheme::kRECAP, FragmentationScheme::kMMPA,
  FragmentationScheme::kRotatable,
};

// "HR", "BRICS", "RECAP", "MMPA", "ROTATABLE"
std::string_view scheme_name(FragmentationScheme scheme);
// Case-insensitive inverse of scheme_name().
std::optional<FragmentationScheme> scheme_from_name(std::string_view name);

struct DisconnectionRule {
  FragmentationScheme scheme;
  std::string rule_id;
  std::string pattern;
  // Two atoms joined by one bond; the bond is the cut site.
  QueryGraph bond_query;
  std::string description;
};

// Named atom environments usable as {name} in rule patterns.
const PredicateRegistry &environment_registry();

// Default rule table in file format.
std::string_view default_rule_table_text();

class RuleTable {
public:
  // Built-in rules, parsed once.
  static const RuleTable &defaults();

  // Lines of `scheme <TAB> rule_id <TAB> pattern [<TAB> description]`.
  // Blank lines and lines starting with '#' are skipped. Throws kSyntax for
  // malformed lines and pattern errors for bad patterns.
  static RuleTable parse(std::string_view text);
  static RuleTable load(const std::filesystem::path &path);

  void add(FragmentationScheme scheme, std::string rule_id,
           std::string_view pattern, std::string description = {});

  std::span<const DisconnectionRule> rules(FragmentationScheme scheme) const;
  std::size_t size() const;

private:
  std::array<std::vector<DisconnectionRule>, kAllSchemes.size()> rules_;
};

// Sorted bond indices.
using CutSet = std::vector<std::uint32_t>;

// Bonds matching any of the scheme's rules, restricted to acyclic single
// bonds that do not touch a wildcard atom.
CutSet eligible_bonds(const MolGraph &g, FragmentationScheme scheme,
                      const RuleTable &table = RuleTable::defaults());

// Whether one rule matches a given bond (either orientation).
bool rule_matches(const DisconnectionRule &rule, const MolGraph &g,
                  std::uint32_t bond);

struct AttachmentRef {
  std::uint32_t fragment = 0;
  // Index of the wildcard atom inside the fragment graph.
  std::uint32_t atom = 0;

  bool operator==(const AttachmentRef &) const = default;
};

struct AttachmentPair {
  AttachmentRef first;
  AttachmentRef second;
  // Index of the bond in the source graph that was cut.
  std::uint32_t source_bond = 0;
};

struct Fragment {
  MolGraph graph;
  // Source atom per fragment atom; kNoSourceAtom for attachment wildcards.
  std::vector<std::uint32_t> source_atoms;
};

inline constexpr std::uint32_t kNoSourceAtom = static_cast<std::uint32_t>(-1);

struct FragmentSet {
  // Ordered by lowest source atom index.
  std::vector<Fragment> fragments;
  // One pair per cut bond, in cut order.
  std::vector<AttachmentPair> pairs;

  std::optional<AttachmentRef> partner(const AttachmentRef &ref) const;
};

// Removes the cut bonds and caps both stubs with paired wildcard atoms.
// Throws kFragmentationFailure if a fragment fails validation, or kSyntax if
// a cut is not an acyclic single bond.
FragmentSet fragment(const MolGraph &g, std::span<const std::uint32_t> cuts);

// Joins each attachment pair with a single bond and drops the wildcards.
MolGraph reassemble(const FragmentSet &set);

struct FragmentCountStats {
  // fragment count -> number of molecules
  std::map<std::size_t, std::size_t> histogram;
  double mean = 0.0;
  std::size_t molecules = 0;
  std::size_t failures = 0;
};

FragmentCountStats fragment_count_stats(std::span<const MolGraph> corpus,
                                        FragmentationScheme scheme,
                                        const RuleTable &table = RuleTable::defaults());

}  // namespace safekit

#endif  // SAFEKIT_FRAGMENTER_HPP_
