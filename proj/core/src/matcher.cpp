//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <limits>

#include "safekit/patterns.hpp"

namespace safekit {
namespace {

constexpr std::uint32_t kUnmapped = std::numeric_limits<std::uint32_t>::max();

class Matcher {
public:
  Matcher(const QueryGraph &q, const MolGraph &g, bool exact_degree,
          std::size_t limit)
      : q_(q), g_(g), exact_degree_(exact_degree), limit_(limit),
        mapping_(q.num_atoms(), kUnmapped), core_use_(g.num_atoms(), 0),
        attach_use_(g.num_atoms(), 0), bond_use_(g.num_bonds(), 0) { }

  std::vector<MatchMapping> run() {
    if (q_.num_atoms() == 0 || q_.num_atoms() > g_.num_atoms() + count_attachments())
      return {};
    if (!compute_candidates())
      return {};
    plan_order();
    extend(0);
    return std::move(results_);
  }

private:
  std::uint32_t count_attachments() const {
    std::uint32_t n = 0;
    for (std::uint32_t i = 0; i < q_.num_atoms(); ++i)
      n += q_.atom(i).attachment ? 1 : 0;
    return n;
  }

  bool compute_candidates() {
    const auto n = q_.num_atoms();
    allowed_.assign(n, std::vector<bool>(g_.num_atoms(), false));
    candidates_.assign(n, {});
    for (std::uint32_t u = 0; u < n; ++u) {
      const auto qdeg = q_.neighbors(u).size();
      for (std::uint32_t t = 0; t < g_.num_atoms(); ++t) {
        const auto tdeg = g_.degree(t);
        if (exact_degree_ ? tdeg != qdeg : tdeg < qdeg)
          continue;
        if (!q_.atom(u).matches(g_, t))
          continue;
        allowed_[u][t] = true;
        candidates_[u].push_back(t);
      }
      if (candidates_[u].empty())
        return false;
    }
    return true;
  }

  // Start from the most selective query atom, then grow along query bonds,
  // preferring atoms with fewer candidates. Disconnected queries restart
  // from the next most selective unplaced atom.
  void plan_order() {
    const auto n = q_.num_atoms();
    std::vector<bool> placed(n, false);
    parent_.assign(n, kUnmapped);
    std::vector<std::uint32_t> parent_of(n, kUnmapped);
    while (order_.size() < n) {
      std::uint32_t best = kUnmapped;
      bool best_frontier = false;
      for (std::uint32_t u = 0; u < n; ++u) {
        if (placed[u])
          continue;
        const bool frontier = parent_of[u] != kUnmapped;
        if (best == kUnmapped || (frontier && !best_frontier)
            || (frontier == best_frontier
                && candidates_[u].size() < candidates_[best].size())) {
          best = u;
          best_frontier = frontier;
        }
      }
      placed[best] = true;
      parent_[order_.size()] = parent_of[best];
      order_.push_back(best);
      for (Neighbor nb: q_.neighbors(best)) {
        if (!placed[nb.atom] && parent_of[nb.atom] == kUnmapped)
          parent_of[nb.atom] = best;
      }
    }
  }

  bool compatible(std::uint32_t u, std::uint32_t t) const {
    if (!allowed_[u][t] || core_use_[t] > 0)
      return false;
    if (!q_.atom(u).attachment && attach_use_[t] > 0)
      return false;
    for (Neighbor nb: q_.neighbors(u)) {
      const auto w = mapping_[nb.atom];
      if (w == kUnmapped)
        continue;
      auto bond = g_.bond_between(t, w);
      if (!bond || bond_use_[*bond] > 0 || !q_.bond(nb.bond).pattern.matches(g_.bond(*bond)))
        return false;
    }
    return true;
  }

  // Attachment atoms may share a target atom, but two query bonds never
  // share a target bond.
  void assign(std::uint32_t u, std::uint32_t t, int delta) {
    if (q_.atom(u).attachment)
      attach_use_[t] += delta;
    else
      core_use_[t] += delta;
    for (Neighbor nb: q_.neighbors(u)) {
      if (nb.atom != u && mapping_[nb.atom] != kUnmapped)
        bond_use_[*g_.bond_between(t, mapping_[nb.atom])] += delta;
    }
    mapping_[u] = delta > 0 ? t : kUnmapped;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) {
      results_.push_back(mapping_);
      return limit_ != 0 && results_.size() >= limit_;
    }
    const auto u = order_[depth];
    const auto parent = parent_[depth];
    auto attempt = [&](std::uint32_t t) {
      if (!compatible(u, t))
        return false;
      assign(u, t, 1);
      const bool stop = extend(depth + 1);
      assign(u, t, -1);
      return stop;
    };
    if (parent != kUnmapped) {
      for (Neighbor nb: g_.neighbors(mapping_[parent])) {
        if (attempt(nb.atom))
          return true;
      }
    } else {
      for (auto t: candidates_[u]) {
        if (attempt(t))
          return true;
      }
    }
    return false;
  }

  const QueryGraph &q_;
  const MolGraph &g_;
  bool exact_degree_;
  std::size_t limit_;
  std::vector<std::vector<bool>> allowed_;
  std::vector<std::vector<std::uint32_t>> candidates_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> parent_;
  MatchMapping mapping_;
  std::vector<int> core_use_;
  std::vector<int> attach_use_;
  std::vector<int> bond_use_;
  std::vector<MatchMapping> results_;
};

AtomPrimitive primitive(AtomPrimitiveKind kind, int value = 0) {
  AtomPrimitive t;
  t.kind = kind;
  t.value = value;
  return t;
}

AtomPrimitive symbol(const Atom &a) {
  AtomPrimitive t;
  t.kind = AtomPrimitiveKind::kSymbol;
  t.element = a.element;
  t.aromatic = a.aromatic;
  return t;
}

BondPattern exact_bond(BondOrder order) {
  BondPrimitive t;
  switch (order) {
  case BondOrder::kSingle:
    t.kind = BondPrimitiveKind::kSingle;
    break;
  case BondOrder::kDouble:
    t.kind = BondPrimitiveKind::kDouble;
    break;
  case BondOrder::kTriple:
    t.kind = BondPrimitiveKind::kTriple;
    break;
  case BondOrder::kAromatic:
    t.kind = BondPrimitiveKind::kAromatic;
    break;
  }
  return BondPattern { { t } };
}

}  // namespace

std::vector<MatchMapping> match_all(const QueryGraph &q, const MolGraph &g,
                                    const MatchOptions &options) {
  return Matcher(q, g, false, options.max_matches).run();
}

bool has_substructure(const QueryGraph &q, const MolGraph &g) {
  return !Matcher(q, g, false, 1).run().empty();
}

QueryGraph exact_query(const MolGraph &g) {
  QueryGraph q;
  for (std::uint32_t i = 0; i < g.num_atoms(); ++i) {
    const Atom &a = g.atom(i);
    AtomPattern p;
    p.terms.push_back(symbol(a));
    p.terms.push_back(primitive(AtomPrimitiveKind::kCharge, a.charge));
    p.terms.push_back(primitive(AtomPrimitiveKind::kTotalH, a.total_h()));
    p.terms.push_back(
        primitive(AtomPrimitiveKind::kDegree, static_cast<int>(g.degree(i))));
    q.add_atom(std::move(p));
  }
  for (const Bond &b: g.bonds())
    q.add_bond(b.begin, b.end, exact_bond(b.order));
  return q;
}

bool is_isomorphic(const MolGraph &a, const MolGraph &b) {
  if (a.num_atoms() != b.num_atoms() || a.num_bonds() != b.num_bonds())
    return false;
  if (a.num_atoms() == 0)
    return true;
  auto histogram = [](const MolGraph &g) {
    std::vector<std::uint64_t> keys;
    for (std::uint32_t i = 0; i < g.num_atoms(); ++i) {
      const Atom &x = g.atom(i);
      keys.push_back((static_cast<std::uint64_t>(x.element) << 32)
                     | (static_cast<std::uint64_t>(x.aromatic) << 24)
                     | (static_cast<std::uint64_t>(x.charge + 8) << 16)
                     | (static_cast<std::uint64_t>(x.total_h()) << 8)
                     | g.degree(i));
    }
    std::sort(keys.begin(), keys.end());
    return keys;
  };
  if (histogram(a) != histogram(b))
    return false;
  return !Matcher(exact_query(a), b, true, 1).run().empty();
}

QueryGraph scaffold_query(const MolGraph &scaffold) {
  QueryGraph q;
  for (std::uint32_t i = 0; i < scaffold.num_atoms(); ++i) {
    const Atom &a = scaffold.atom(i);
    AtomPattern p;
    if (a.is_wildcard()) {
      AtomPrimitive not_h;
      not_h.kind = AtomPrimitiveKind::kAtomicNumber;
      not_h.element = Element::kH;
      not_h.negated = true;
      p.terms.push_back(not_h);
      p.attachment = true;
    } else {
      p.terms.push_back(symbol(a));
      if (a.charge != 0)
        p.terms.push_back(primitive(AtomPrimitiveKind::kCharge, a.charge));
    }
    q.add_atom(std::move(p));
  }
  for (const Bond &b: scaffold.bonds()) {
    if (scaffold.atom(b.begin).is_wildcard() || scaffold.atom(b.end).is_wildcard())
      q.add_bond(b.begin, b.end, BondPattern { { BondPrimitive {} } });
    else
      q.add_bond(b.begin, b.end, exact_bond(b.order));
  }
  return q;
}

}  // namespace safekit
