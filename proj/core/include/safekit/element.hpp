//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_ELEMENT_HPP_
#define SAFEKIT_ELEMENT_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace safekit {

// The chemistry domain is the MOSES element set plus the `*` attachment
// point. Anything else is rejected at parse time.
enum class Element : std::uint8_t {
  kWildcard = 0,
  kH,
  kC,
  kN,
  kO,
  kF,
  kS,
  kCl,
  kBr,
};

inline constexpr int kElementCount = 9;

std::string_view element_symbol(Element e);
int atomic_number(Element e);
double atomic_mass(Element e);

// Looks up a symbol as written in SMILES (case sensitive, aliphatic form).
std::optional<Element> element_from_symbol(std::string_view symbol);
std::optional<Element> element_from_atomic_number(int z);

// True for the elements that may be written in lowercase aromatic form.
bool can_be_aromatic(Element e);

// Permitted valences of a neutral atom, ascending. Empty for the wildcard,
// which is unconstrained.
std::span<const int> neutral_valences(Element e);

// Valence accounting for one atom. bond_sum counts aromatic bonds as 1.
struct ValenceQuery {
  Element element;
  bool aromatic = false;
  int charge = 0;
  int bond_sum = 0;
};

// Implicit hydrogen count under the lowest-permitted-valence rule, or
// nullopt when bond_sum already exceeds every permitted valence.
std::optional<int> default_implicit_hydrogens(const ValenceQuery &q);

// Whether an atom with a fixed hydrogen count is within the valence table.
bool valence_allowed(const ValenceQuery &q, int hydrogens);

}  // namespace safekit

#endif  // SAFEKIT_ELEMENT_HPP_
