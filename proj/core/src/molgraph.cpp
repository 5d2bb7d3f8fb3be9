//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "safekit/molgraph.hpp"

#include <algorithm>
#include <string>

#include "safekit/error.hpp"
#include "safekit/rings.hpp"

namespace safekit {

std::optional<std::uint32_t> MolGraph::bond_between(std::uint32_t a,
                                                    std::uint32_t b) const {
  for (Neighbor n: adjacency_[a]) {
    if (n.atom == b)
      return n.bond;
  }
  return std::nullopt;
}

int MolGraph::bond_sum(std::uint32_t i) const {
  int sum = 0;
  for (Neighbor n: adjacency_[i])
    sum += valence_contribution(bonds_[n.bond].order);
  return sum;
}

std::uint32_t MolGraph::heavy_atom_count() const {
  return static_cast<std::uint32_t>(std::count_if(
      atoms_.begin(), atoms_.end(), [](const Atom &a) {
        return a.element != Element::kH && a.element != Element::kWildcard;
      }));
}

std::uint32_t MolGraph::wildcard_count() const {
  return static_cast<std::uint32_t>(std::count_if(
      atoms_.begin(), atoms_.end(),
      [](const Atom &a) { return a.is_wildcard(); }));
}

std::uint32_t MolBuilder::add_atom(const AtomSpec &spec) {
  atoms_.push_back(spec);
  partners_.emplace_back();
  return static_cast<std::uint32_t>(atoms_.size() - 1);
}

bool MolBuilder::has_bond(std::uint32_t a, std::uint32_t b) const {
  const auto &p = partners_[a];
  return std::find(p.begin(), p.end(), b) != p.end();
}

std::uint32_t MolBuilder::add_bond(std::uint32_t a, std::uint32_t b,
                                   BondOrder order) {
  if (a >= atoms_.size() || b >= atoms_.size())
    throw Error(ErrorKind::kSyntax, "bond references a missing atom");
  if (a == b)
    throw Error(ErrorKind::kSyntax, "atom bonded to itself");
  if (has_bond(a, b))
    throw Error(ErrorKind::kSyntax,
                "duplicate bond between atoms " + std::to_string(a) + " and "
                    + std::to_string(b));
  bonds_.push_back({ a, b, order });
  partners_[a].push_back(b);
  partners_[b].push_back(a);
  return static_cast<std::uint32_t>(bonds_.size() - 1);
}

MolGraph MolBuilder::build() const {
  MolGraph g;
  const auto n = static_cast<std::uint32_t>(atoms_.size());

  g.atoms_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const AtomSpec &s = atoms_[i];
    Atom &a = g.atoms_[i];
    a.element = s.element;
    a.aromatic = s.aromatic;
    a.charge = s.charge;
    a.explicit_h = s.explicit_h;
    a.index = i;
    if (a.aromatic && !can_be_aromatic(a.element))
      throw Error(ErrorKind::kValence, "element " + std::string(element_symbol(a.element))
                                           + " cannot be aromatic");
  }

  g.bonds_.resize(bonds_.size());
  g.adjacency_.assign(n, {});
  for (std::uint32_t i = 0; i < bonds_.size(); ++i) {
    const PendingBond &p = bonds_[i];
    Bond &b = g.bonds_[i];
    b.begin = p.a;
    b.end = p.b;
    b.order = p.order;
    b.index = i;
    if (b.order == BondOrder::kAromatic
        && (!g.atoms_[b.begin].aromatic || !g.atoms_[b.end].aromatic))
      throw Error(ErrorKind::kValence, "aromatic bond between non-aromatic atoms");
    g.adjacency_[p.a].push_back({ p.b, i });
    g.adjacency_[p.b].push_back({ p.a, i });
  }

  auto cycle = internal::find_cycle_edges(n, g.adjacency_, g.num_bonds());
  for (Bond &b: g.bonds_) {
    b.in_ring = cycle[b.index];
    // Aromatic bonds only exist inside rings; a chain bond between two
    // aromatic atoms (biaryl, or a closure digit joining two rings) is single.
    if (!b.in_ring && b.order == BondOrder::kAromatic)
      b.order = BondOrder::kSingle;
    if (b.in_ring) {
      g.atoms_[b.begin].in_ring = true;
      g.atoms_[b.end].in_ring = true;
    }
  }

  for (Atom &a: g.atoms_) {
    ValenceQuery q { a.element, a.aromatic, a.charge, g.bond_sum(a.index) };
    if (a.aromatic && !a.in_ring)
      throw Error(ErrorKind::kValence,
                  "aromatic atom " + std::to_string(a.index) + " is not in a ring");
    if (a.explicit_h) {
      if (!valence_allowed(q, *a.explicit_h))
        throw Error(ErrorKind::kValence,
                    "atom " + std::to_string(a.index) + " exceeds its valence");
      a.implicit_h = 0;
    } else {
      auto h = default_implicit_hydrogens(q);
      if (!h)
        throw Error(ErrorKind::kValence,
                    "atom " + std::to_string(a.index) + " ("
                        + std::string(element_symbol(a.element))
                        + ") exceeds its valence");
      a.implicit_h = *h;
    }
  }

  // Components, numbered by lowest atom index.
  g.component_.assign(n, static_cast<std::uint32_t>(-1));
  std::vector<std::uint32_t> stack;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (g.component_[root] != static_cast<std::uint32_t>(-1))
      continue;
    const std::uint32_t id = g.component_count_++;
    g.component_[root] = id;
    stack.assign(1, root);
    while (!stack.empty()) {
      std::uint32_t a = stack.back();
      stack.pop_back();
      for (Neighbor nb: g.adjacency_[a]) {
        if (g.component_[nb.atom] == static_cast<std::uint32_t>(-1)) {
          g.component_[nb.atom] = id;
          stack.push_back(nb.atom);
        }
      }
    }
  }
  return g;
}

MolBuilder to_builder(const MolGraph &g, bool freeze_hydrogens) {
  MolBuilder b;
  for (const Atom &a: g.atoms()) {
    AtomSpec s { a.element, a.aromatic, a.charge, a.explicit_h };
    if (freeze_hydrogens)
      s.explicit_h = a.total_h();
    b.add_atom(s);
  }
  for (const Bond &bd: g.bonds())
    b.add_bond(bd.begin, bd.end, bd.order);
  return b;
}

}  // namespace safekit
