//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "safekit/element.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

#include "safekit/error.hpp"

namespace safekit {

namespace {

struct ElementInfo {
  std::string_view symbol;
  int atomic_number;
  double mass;
};

constexpr std::array<ElementInfo, kElementCount> kElements = {{
    { "*", 0, 0.0 },
    { "H", 1, 1.008 },
    { "C", 6, 12.011 },
    { "N", 7, 14.007 },
    { "O", 8, 15.999 },
    { "F", 9, 18.998 },
    { "S", 16, 32.067 },
    { "Cl", 17, 35.453 },
    { "Br", 35, 79.904 },
}};

constexpr std::array<int, 1> kOne = { 1 };
constexpr std::array<int, 1> kTwo = { 2 };
constexpr std::array<int, 1> kThree = { 3 };
constexpr std::array<int, 1> kFour = { 4 };
constexpr std::array<int, 3> kSulfur = { 2, 4, 6 };

const ElementInfo &info(Element e) {
  return kElements[static_cast<std::size_t>(e)];
}

// Charged atoms shift their permitted valences: electron-rich elements
// gain one bond per positive charge, carbon loses one per unit of charge.
int adjusted_valence(Element e, int valence, int charge) {
  switch (e) {
  case Element::kC:
  case Element::kH:
    return valence - std::abs(charge);
  default:
    return valence + charge;
  }
}

// Aromatic carbon and nitrogen donate one electron to the pi system, which
// occupies one unit of valence when the atom has room for it.
bool takes_pi_valence(const ValenceQuery &q) {
  return q.aromatic && (q.element == Element::kC || q.element == Element::kN);
}

}  // namespace

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::kSyntax:
    return "SyntaxError";
  case ErrorKind::kUnclosedRing:
    return "UnclosedRing";
  case ErrorKind::kValence:
    return "ValenceError";
  case ErrorKind::kUnknownElement:
    return "UnknownElement";
  case ErrorKind::kUnsupportedPrimitive:
    return "UnsupportedPrimitive";
  case ErrorKind::kFragmentationFailure:
    return "FragmentationFailure";
  case ErrorKind::kNoAttachmentPoints:
    return "NoAttachmentPoints";
  case ErrorKind::kBadAttachmentCount:
    return "BadAttachmentCount";
  case ErrorKind::kOutOfVocabularyPrompt:
    return "OutOfVocabularyPrompt";
  case ErrorKind::kEmptyCorpus:
    return "EmptyCorpus";
  case ErrorKind::kTokenize:
    return "TokenizeError";
  case ErrorKind::kModelFormat:
    return "ModelFormatError";
  case ErrorKind::kIo:
    return "IoError";
  }
  return "Error";
}

std::string_view element_symbol(Element e) { return info(e).symbol; }

int atomic_number(Element e) { return info(e).atomic_number; }

double atomic_mass(Element e) { return info(e).mass; }

std::optional<Element> element_from_symbol(std::string_view symbol) {
  for (std::size_t i = 0; i < kElements.size(); ++i) {
    if (kElements[i].symbol == symbol)
      return static_cast<Element>(i);
  }
  return std::nullopt;
}

std::optional<Element> element_from_atomic_number(int z) {
  for (std::size_t i = 0; i < kElements.size(); ++i) {
    if (kElements[i].atomic_number == z)
      return static_cast<Element>(i);
  }
  return std::nullopt;
}

bool can_be_aromatic(Element e) {
  return e == Element::kC || e == Element::kN || e == Element::kO
         || e == Element::kS;
}

std::span<const int> neutral_valences(Element e) {
  switch (e) {
  case Element::kWildcard:
    return {};
  case Element::kH:
  case Element::kF:
  case Element::kCl:
  case Element::kBr:
    return kOne;
  case Element::kC:
    return kFour;
  case Element::kN:
    return kThree;
  case Element::kO:
    return kTwo;
  case Element::kS:
    return kSulfur;
  }
  return {};
}

std::optional<int> default_implicit_hydrogens(const ValenceQuery &q) {
  if (q.element == Element::kWildcard)
    return 0;

  const auto lowest_at_least = [&](int used) -> std::optional<int> {
    for (int v: neutral_valences(q.element)) {
      int adjusted = adjusted_valence(q.element, v, q.charge);
      if (adjusted >= used)
        return adjusted - used;
    }
    return std::nullopt;
  };

  if (takes_pi_valence(q)) {
    if (auto h = lowest_at_least(q.bond_sum + 1))
      return h;
    if (lowest_at_least(q.bond_sum))
      return 0;
    return std::nullopt;
  }
  return lowest_at_least(q.bond_sum);
}

bool valence_allowed(const ValenceQuery &q, int hydrogens) {
  if (q.element == Element::kWildcard)
    return true;
  if (hydrogens < 0)
    return false;

  int max_valence = -1;
  for (int v: neutral_valences(q.element))
    max_valence = std::max(max_valence, adjusted_valence(q.element, v, q.charge));
  return q.bond_sum + hydrogens <= max_valence;
}

}  // namespace safekit
