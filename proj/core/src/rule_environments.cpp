//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Atom environments for the disconnection rules. Each environment is an
// atom-centered test on the unfragmented molecule; the rule table pairs them
// across one acyclic single bond.

#include <initializer_list>

#include "safekit/fragmenter.hpp"

namespace safekit {
namespace {

using Pred = bool (*)(const MolGraph &, std::uint32_t);

bool is(const MolGraph &g, std::uint32_t i, Element e, bool aromatic) {
  const Atom &a = g.atom(i);
  return a.element == e && a.aromatic == aromatic;
}

bool element_in(const MolGraph &g, std::uint32_t i, std::initializer_list<Element> set) {
  for (Element e: set) {
    if (g.atom(i).element == e)
      return true;
  }
  return false;
}

bool aromatic_in(const MolGraph &g, std::uint32_t i, std::initializer_list<Element> set) {
  return g.atom(i).aromatic && element_in(g, i, set);
}

bool aliphatic_in(const MolGraph &g, std::uint32_t i, std::initializer_list<Element> set) {
  return !g.atom(i).aromatic && element_in(g, i, set);
}

bool acyclic_single(const Bond &b) {
  return b.order == BondOrder::kSingle && !b.in_ring;
}

bool ring_single(const Bond &b) {
  return b.order == BondOrder::kSingle && b.in_ring;
}

// First neighbor whose bond and atom pass the test; kNoSourceAtom when
// absent.
template <class BondTest>
std::uint32_t find_neighbor(const MolGraph &g, std::uint32_t i, BondTest test,
                            std::uint32_t skip = kNoSourceAtom) {
  for (Neighbor nb: g.neighbors(i)) {
    if (nb.atom != skip && test(g.bond(nb.bond), nb.atom))
      return nb.atom;
  }
  return kNoSourceAtom;
}

bool has_double(const MolGraph &g, std::uint32_t i) {
  for (Neighbor nb: g.neighbors(i)) {
    if (g.bond(nb.bond).order == BondOrder::kDouble)
      return true;
  }
  return false;
}

bool has_triple(const MolGraph &g, std::uint32_t i) {
  for (Neighbor nb: g.neighbors(i)) {
    if (g.bond(nb.bond).order == BondOrder::kTriple)
      return true;
  }
  return false;
}

// Double bond to an aliphatic oxygen, optionally restricted to acyclic.
std::uint32_t carbonyl_oxygen(const MolGraph &g, std::uint32_t i,
                              bool acyclic_only = false,
                              std::uint32_t skip = kNoSourceAtom) {
  return find_neighbor(
      g, i,
      [&](const Bond &b, std::uint32_t o) {
        return b.order == BondOrder::kDouble && (!acyclic_only || !b.in_ring)
               && is(g, o, Element::kO, false);
      },
      skip);
}

// Two distinct neighbors x, y with first(x) and second(y).
template <class First, class Second>
bool two_neighbors(const MolGraph &g, std::uint32_t i, First first, Second second) {
  for (Neighbor x: g.neighbors(i)) {
    if (!first(g.bond(x.bond), x.atom))
      continue;
    for (Neighbor y: g.neighbors(i)) {
      if (y.atom != x.atom && second(g.bond(y.bond), y.atom))
        return true;
    }
  }
  return false;
}

// --- BRICS environments --------------------------------------------------

// [C;D3]([#0,#6,#7,#8])(=O)
bool brics_l1(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kC, false) || g.degree(i) != 3)
    return false;
  return two_neighbors(
      g, i,
      [&](const Bond &b, std::uint32_t o) {
        return b.order == BondOrder::kDouble && is(g, o, Element::kO, false);
      },
      [&](const Bond &b, std::uint32_t x) {
        return b.order == BondOrder::kSingle
               && element_in(g, x, { Element::kWildcard, Element::kC, Element::kN, Element::kO });
      });
}

// [O;D2]-;!@[#0,#6,#1]
bool brics_l3(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kO, false) || g.degree(i) != 2)
    return false;
  return find_neighbor(g, i, [&](const Bond &b, std::uint32_t x) {
           return acyclic_single(b)
                  && element_in(g, x, { Element::kWildcard, Element::kC, Element::kH });
         })
         != kNoSourceAtom;
}

// [C;!D1;!$(C=*)]-;!@[#6]
bool brics_l4(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kC, false) || g.degree(i) == 1 || has_double(g, i))
    return false;
  return find_neighbor(g, i, [&](const Bond &b, std::uint32_t x) {
           return acyclic_single(b) && g.atom(x).element == Element::kC;
         })
         != kNoSourceAtom;
}

// [N;!D1;!$(N=*);!$(N-[!#6;!#16;!#0;!#1]);!$([N;R]@[C;R]=O)]
bool brics_l5(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kN, false) || g.degree(i) == 1 || has_double(g, i))
    return false;
  for (Neighbor nb: g.neighbors(i)) {
    const Bond &b = g.bond(nb.bond);
    if (b.order == BondOrder::kSingle
        && !element_in(g, nb.atom,
                       { Element::kC, Element::kS, Element::kWildcard, Element::kH }))
      return false;
    if (g.atom(i).in_ring && b.in_ring && is(g, nb.atom, Element::kC, false)
        && g.atom(nb.atom).in_ring && carbonyl_oxygen(g, nb.atom) != kNoSourceAtom)
      return false;
  }
  return true;
}

// [C;D3;!R](=O)-;!@[#0,#6,#7,#8]
bool brics_l6(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kC, false) || g.degree(i) != 3 || g.atom(i).in_ring)
    return false;
  return two_neighbors(
      g, i,
      [&](const Bond &b, std::uint32_t o) {
        return b.order == BondOrder::kDouble && is(g, o, Element::kO, false);
      },
      [&](const Bond &b, std::uint32_t x) {
        return acyclic_single(b)
               && element_in(g, x, { Element::kWildcard, Element::kC, Element::kN, Element::kO });
      });
}

// [C;!R;!D1;!$(C!-*)]
bool brics_l8(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kC, false) || g.atom(i).in_ring || g.degree(i) == 1)
    return false;
  for (Neighbor nb: g.neighbors(i)) {
    if (g.bond(nb.bond).order != BondOrder::kSingle)
      return false;
  }
  return true;
}

bool aromatic_bond_to(const MolGraph &g, const Bond &b, std::uint32_t x,
                      std::initializer_list<Element> set) {
  return b.order == BondOrder::kAromatic && aromatic_in(g, x, set);
}

// [n;+0;$(n(:[c,n,o,s]):[c,n,o,s])]
bool brics_l9(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kN, true) || g.atom(i).charge != 0)
    return false;
  auto cnos = [&](const Bond &b, std::uint32_t x) {
    return aromatic_bond_to(g, b, x, { Element::kC, Element::kN, Element::kO, Element::kS });
  };
  return two_neighbors(g, i, cnos, cnos);
}

// [N;R;$(N(@C(=O))@[C,N,O,S])]
bool brics_l10(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kN, false) || !g.atom(i).in_ring)
    return false;
  return two_neighbors(
      g, i,
      [&](const Bond &b, std::uint32_t c) {
        return b.in_ring && is(g, c, Element::kC, false)
               && carbonyl_oxygen(g, c) != kNoSourceAtom;
      },
      [&](const Bond &b, std::uint32_t x) {
        return b.in_ring
               && aliphatic_in(g, x, { Element::kC, Element::kN, Element::kO, Element::kS });
      });
}

// [S;D2](-;!@[#0,#6])
bool brics_l11(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kS, false) || g.degree(i) != 2)
    return false;
  return find_neighbor(g, i, [&](const Bond &b, std::uint32_t x) {
           return acyclic_single(b) && element_in(g, x, { Element::kWildcard, Element::kC });
         })
         != kNoSourceAtom;
}

// [S;D4]([#6,#0])(=O)(=O)
bool brics_l12(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kS, false) || g.degree(i) != 4)
    return false;
  const auto o1 = carbonyl_oxygen(g, i);
  if (o1 == kNoSourceAtom || carbonyl_oxygen(g, i, false, o1) == kNoSourceAtom)
    return false;
  return find_neighbor(g, i, [&](const Bond &b, std::uint32_t x) {
           return b.order == BondOrder::kSingle
                  && element_in(g, x, { Element::kWildcard, Element::kC });
         })
         != kNoSourceAtom;
}

// [C;$(C(-;@[C,N,O,S])-;@[N,O,S])]
bool brics_l13(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kC, false))
    return false;
  return two_neighbors(
      g, i,
      [&](const Bond &b, std::uint32_t x) {
        return ring_single(b)
               && aliphatic_in(g, x, { Element::kC, Element::kN, Element::kO, Element::kS });
      },
      [&](const Bond &b, std::uint32_t x) {
        return ring_single(b) && aliphatic_in(g, x, { Element::kN, Element::kO, Element::kS });
      });
}

// [c;$(c(:[c,n,o,s]):[n,o,s])]
bool brics_l14(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kC, true))
    return false;
  return two_neighbors(
      g, i,
      [&](const Bond &b, std::uint32_t x) {
        return aromatic_bond_to(g, b, x, { Element::kC, Element::kN, Element::kO, Element::kS });
      },
      [&](const Bond &b, std::uint32_t x) {
        return aromatic_bond_to(g, b, x, { Element::kN, Element::kO, Element::kS });
      });
}

// [C;$(C(-;@C)-;@C)]
bool brics_l15(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kC, false))
    return false;
  auto ring_c = [&](const Bond &b, std::uint32_t x) {
    return ring_single(b) && is(g, x, Element::kC, false);
  };
  return two_neighbors(g, i, ring_c, ring_c);
}

// [c;$(c(:c):c)]
bool brics_l16(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kC, true))
    return false;
  auto arom_c = [&](const Bond &b, std::uint32_t x) {
    return aromatic_bond_to(g, b, x, { Element::kC });
  };
  return two_neighbors(g, i, arom_c, arom_c);
}

// --- RECAP environments --------------------------------------------------

std::uint32_t nitrogen_count(const MolGraph &g, std::uint32_t i) {
  std::uint32_t n = 0;
  for (Neighbor nb: g.neighbors(i))
    n += g.atom(nb.atom).element == Element::kN ? 1 : 0;
  return n;
}

// C(=!@O), excluding C([#7])[#7]
bool recap_amide_c(const MolGraph &g, std::uint32_t i) {
  return is(g, i, Element::kC, false) && carbonyl_oxygen(g, i, true) != kNoSourceAtom
         && nitrogen_count(g, i) < 2;
}

// C(=!@O)
bool recap_carbonyl_c(const MolGraph &g, std::uint32_t i) {
  return is(g, i, Element::kC, false) && carbonyl_oxygen(g, i, true) != kNoSourceAtom;
}

bool urea_nitrogen(const MolGraph &g, std::uint32_t n) {
  return g.atom(n).element == Element::kN && g.atom(n).charge == 0
         && (g.degree(n) == 2 || g.degree(n) == 3);
}

// [#7;+0;D2,D3]!@C(!@=O)!@[#7;+0;D2,D3]
bool recap_urea_c(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kC, false) || carbonyl_oxygen(g, i, true) == kNoSourceAtom)
    return false;
  auto n = [&](const Bond &b, std::uint32_t x) {
    return acyclic_single(b) && urea_nitrogen(g, x);
  };
  return two_neighbors(g, i, n, n);
}

// [N;!D1;+0;!$(N-C=[#7,#8,#16])](-!@*)-!@*
bool recap_amine_n(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kN, false) || g.degree(i) == 1 || g.atom(i).charge != 0)
    return false;
  auto acyclic = [](const Bond &b, std::uint32_t) { return acyclic_single(b); };
  if (!two_neighbors(g, i, acyclic, acyclic))
    return false;
  for (Neighbor nb: g.neighbors(i)) {
    if (g.bond(nb.bond).order != BondOrder::kSingle || g.atom(nb.atom).element != Element::kC)
      continue;
    for (Neighbor nb2: g.neighbors(nb.atom)) {
      if (g.bond(nb2.bond).order == BondOrder::kDouble
          && element_in(g, nb2.atom, { Element::kN, Element::kO, Element::kS }))
        return false;
    }
  }
  return true;
}

// [#6]-!@[O;+0]-!@[#6]
bool recap_ether_o(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kO, false) || g.atom(i).charge != 0)
    return false;
  auto c = [&](const Bond &b, std::uint32_t x) {
    return acyclic_single(b) && g.atom(x).element == Element::kC;
  };
  return two_neighbors(g, i, c, c);
}

// [N;+0](-@C=O): nitrogen bonded through a ring bond to a carbonyl carbon.
bool recap_lactam_n(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kN, false) || g.atom(i).charge != 0)
    return false;
  return find_neighbor(g, i, [&](const Bond &b, std::uint32_t c) {
           return ring_single(b) && is(g, c, Element::kC, false)
                  && carbonyl_oxygen(g, c) != kNoSourceAtom;
         })
         != kNoSourceAtom;
}

// S(=O)(=O)
bool sulfonyl_s(const MolGraph &g, std::uint32_t i) {
  if (!is(g, i, Element::kS, false))
    return false;
  const auto o1 = carbonyl_oxygen(g, i);
  return o1 != kNoSourceAtom && carbonyl_oxygen(g, i, false, o1) != kNoSourceAtom;
}

// --- Other schemes -------------------------------------------------------

// !$(*=,#[!#6])
bool mmpa_carbon(const MolGraph &g, std::uint32_t i) {
  for (Neighbor nb: g.neighbors(i)) {
    const auto order = g.bond(nb.bond).order;
    if ((order == BondOrder::kDouble || order == BondOrder::kTriple)
        && g.atom(nb.atom).element != Element::kC)
      return false;
  }
  return true;
}

bool no_triple(const MolGraph &g, std::uint32_t i) {
  return !has_triple(g, i);
}

PredicateRegistry build_registry() {
  PredicateRegistry r;
  const std::pair<const char *, Pred> table[] = {
    { "brics_l1", brics_l1 },
    { "brics_l3", brics_l3 },
    { "brics_l4", brics_l4 },
    { "brics_l5", brics_l5 },
    { "brics_l6", brics_l6 },
    { "brics_l8", brics_l8 },
    { "brics_l9", brics_l9 },
    { "brics_l10", brics_l10 },
    { "brics_l11", brics_l11 },
    { "brics_l12", brics_l12 },
    { "brics_l13", brics_l13 },
    { "brics_l14", brics_l14 },
    { "brics_l15", brics_l15 },
    { "brics_l16", brics_l16 },
    { "recap_amide_c", recap_amide_c },
    { "recap_carbonyl_c", recap_carbonyl_c },
    { "recap_urea_c", recap_urea_c },
    { "recap_amine_n", recap_amine_n },
    { "recap_ether_o", recap_ether_o },
    { "recap_lactam_n", recap_lactam_n },
    { "sulfonyl_s", sulfonyl_s },
    { "mmpa_carbon", mmpa_carbon },
    { "no_triple", no_triple },
  };
  for (const auto &[name, fn]: table)
    r.add(name, fn);
  return r;
}

constexpr std::string_view kDefaultRules =
    "# scheme\trule_id\tpattern\tdescription\n"
    "HR\thr\t[!#1]-!@[!#1]\tacyclic single bond between heavy atoms\n"
    "MMPA\tmmpa\t[#6;+0;{mmpa_carbon}]!@!=!#*\tneutral carbon not multiply bonded to a heteroatom\n"
    "ROTATABLE\trotatable\t[!D1;{no_triple}]-&!@[!D1;{no_triple}]\tnon-terminal, non-triple endpoints\n"
    "BRICS\tL1-L3\t[{brics_l1}]-;!@[{brics_l3}]\n"
    "BRICS\tL1-L5\t[{brics_l1}]-;!@[{brics_l5}]\n"
    "BRICS\tL1-L10\t[{brics_l1}]-;!@[{brics_l10}]\n"
    "BRICS\tL3-L4\t[{brics_l3}]-;!@[{brics_l4}]\n"
    "BRICS\tL3-L13\t[{brics_l3}]-;!@[{brics_l13}]\n"
    "BRICS\tL3-L14\t[{brics_l3}]-;!@[{brics_l14}]\n"
    "BRICS\tL3-L15\t[{brics_l3}]-;!@[{brics_l15}]\n"
    "BRICS\tL3-L16\t[{brics_l3}]-;!@[{brics_l16}]\n"
    "BRICS\tL4-L5\t[{brics_l4}]-;!@[{brics_l5}]\n"
    "BRICS\tL4-L11\t[{brics_l4}]-;!@[{brics_l11}]\n"
    "BRICS\tL5-L12\t[{brics_l5}]-;!@[{brics_l12}]\n"
    "BRICS\tL5-L13\t[{brics_l5}]-;!@[{brics_l13}]\n"
    "BRICS\tL5-L14\t[{brics_l5}]-;!@[{brics_l14}]\n"
    "BRICS\tL5-L15\t[{brics_l5}]-;!@[{brics_l15}]\n"
    "BRICS\tL5-L16\t[{brics_l5}]-;!@[{brics_l16}]\n"
    "BRICS\tL6-L13\t[{brics_l6}]-;!@[{brics_l13}]\n"
    "BRICS\tL6-L14\t[{brics_l6}]-;!@[{brics_l14}]\n"
    "BRICS\tL6-L15\t[{brics_l6}]-;!@[{brics_l15}]\n"
    "BRICS\tL6-L16\t[{brics_l6}]-;!@[{brics_l16}]\n"
    "BRICS\tL8-L9\t[{brics_l8}]-;!@[{brics_l9}]\n"
    "BRICS\tL8-L10\t[{brics_l8}]-;!@[{brics_l10}]\n"
    "BRICS\tL8-L13\t[{brics_l8}]-;!@[{brics_l13}]\n"
    "BRICS\tL8-L14\t[{brics_l8}]-;!@[{brics_l14}]\n"
    "BRICS\tL8-L15\t[{brics_l8}]-;!@[{brics_l15}]\n"
    "BRICS\tL8-L16\t[{brics_l8}]-;!@[{brics_l16}]\n"
    "BRICS\tL9-L13\t[{brics_l9}]-;!@[{brics_l13}]\n"
    "BRICS\tL9-L14\t[{brics_l9}]-;!@[{brics_l14}]\n"
    "BRICS\tL9-L15\t[{brics_l9}]-;!@[{brics_l15}]\n"
    "BRICS\tL9-L16\t[{brics_l9}]-;!@[{brics_l16}]\n"
    "BRICS\tL10-L13\t[{brics_l10}]-;!@[{brics_l13}]\n"
    "BRICS\tL10-L14\t[{brics_l10}]-;!@[{brics_l14}]\n"
    "BRICS\tL10-L15\t[{brics_l10}]-;!@[{brics_l15}]\n"
    "BRICS\tL10-L16\t[{brics_l10}]-;!@[{brics_l16}]\n"
    "BRICS\tL11-L13\t[{brics_l11}]-;!@[{brics_l13}]\n"
    "BRICS\tL11-L14\t[{brics_l11}]-;!@[{brics_l14}]\n"
    "BRICS\tL11-L15\t[{brics_l11}]-;!@[{brics_l15}]\n"
    "BRICS\tL11-L16\t[{brics_l11}]-;!@[{brics_l16}]\n"
    "BRICS\tL13-L14\t[{brics_l13}]-;!@[{brics_l14}]\n"
    "BRICS\tL13-L15\t[{brics_l13}]-;!@[{brics_l15}]\n"
    "BRICS\tL13-L16\t[{brics_l13}]-;!@[{brics_l16}]\n"
    "BRICS\tL14-L14\t[{brics_l14}]-;!@[{brics_l14}]\n"
    "BRICS\tL14-L15\t[{brics_l14}]-;!@[{brics_l15}]\n"
    "BRICS\tL14-L16\t[{brics_l14}]-;!@[{brics_l16}]\n"
    "BRICS\tL15-L16\t[{brics_l15}]-;!@[{brics_l16}]\n"
    "BRICS\tL16-L16\t[{brics_l16}]-;!@[{brics_l16}]\n"
    "RECAP\turea\t[#7;+0;!D1;!D4]-!@[{recap_urea_c}]\turea\n"
    "RECAP\tamide\t[{recap_amide_c}]-!@[#7;+0;!D1]\tamide\n"
    "RECAP\tester\t[{recap_carbonyl_c}]-!@[O;+0]\tester\n"
    "RECAP\tamine\t[{recap_amine_n}]-!@*\tamine\n"
    "RECAP\tcyclic_amine\t[#7;R;D3;+0]-!@*\tring amine, exocyclic bond\n"
    "RECAP\tether\t[{recap_ether_o}]-!@[#6]\tether\n"
    "# olefin: C=C is never a single bond, so it contributes no cuts\n"
    "RECAP\tquaternary_n\t[#7;+1;D4]-!@[#6]\tquaternary nitrogen\n"
    "RECAP\taromatic_n_aliphatic_c\t[n;+0]-!@C\taromatic nitrogen to aliphatic carbon\n"
    "RECAP\tlactam_n_aliphatic_c\t[{recap_lactam_n}]-!@C\tlactam nitrogen to aliphatic carbon\n"
    "RECAP\tbiaryl\tc-!@c\taromatic carbon to aromatic carbon\n"
    "RECAP\taromatic_n_aromatic_c\t[n;+0]-!@c\taromatic nitrogen to aromatic carbon\n"
    "RECAP\tsulfonamide\t[#7;+0;!D1;!D4]-!@[{sulfonyl_s}]\tsulfonamide\n";

}  // namespace

const PredicateRegistry &environment_registry() {
  static const PredicateRegistry registry = build_registry();
  return registry;
}

std::string_view default_rule_table_text() {
  return kDefaultRules;
}

}  // namespace safekit
