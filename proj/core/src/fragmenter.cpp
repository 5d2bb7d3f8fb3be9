//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "safekit/fragmenter.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "safekit/error.hpp"

namespace safekit {

std::string_view scheme_name(FragmentationScheme scheme) {
  switch (scheme) {
  case FragmentationScheme::kHR:
    return "HR";
  case FragmentationScheme::kBRICS:
    return "BRICS";
  case FragmentationScheme::kRECAP:
    return "RECAP";
  case FragmentationScheme::kMMPA:
    return "MMPA";
  case FragmentationScheme::kRotatable:
    return "ROTATABLE";
  }
  return "?";
}

std::optional<FragmentationScheme> scheme_from_name(std::string_view name) {
  std::string upper(name);
  for (char &c: upper)
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (auto s: kAllSchemes) {
    if (scheme_name(s) == upper)
      return s;
  }
  return std::nullopt;
}

const RuleTable &RuleTable::defaults() {
  static const RuleTable table = parse(default_rule_table_text());
  return table;
}

RuleTable RuleTable::parse(std::string_view text) {
  RuleTable table;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view {} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    if (line.empty() || line.front() == '#')
      continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string_view::npos)
        break;
      start = tab + 1;
    }
    if (fields.size() < 3 || fields.size() > 4)
      throw Error(ErrorKind::kSyntax, "rule table line " + std::to_string(line_no)
                                          + ": expected 3 or 4 tab-separated fields");
    auto scheme = scheme_from_name(fields[0]);
    if (!scheme)
      throw Error(ErrorKind::kSyntax, "rule table line " + std::to_string(line_no)
                                          + ": unknown scheme '" + std::string(fields[0])
                                          + "'");
    table.add(*scheme, std::string(fields[1]), fields[2],
              fields.size() == 4 ? std::string(fields[3]) : std::string {});
  }
  return table;
}

RuleTable RuleTable::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::kSyntax, "cannot open rule table " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void RuleTable::add(FragmentationScheme scheme, std::string rule_id,
                    std::string_view pattern, std::string description) {
  QueryGraph q = parse_pattern(pattern, &environment_registry());
  if (q.num_atoms() != 2 || q.num_bonds() != 1)
    throw Error(ErrorKind::kSyntax, "rule " + rule_id + " must be a single bond between two atoms");
  rules_[static_cast<std::size_t>(scheme)].push_back(
      { scheme, std::move(rule_id), std::string(pattern), std::move(q),
        std::move(description) });
}

std::span<const DisconnectionRule> RuleTable::rules(FragmentationScheme scheme) const {
  return rules_[static_cast<std::size_t>(scheme)];
}

std::size_t RuleTable::size() const {
  std::size_t n = 0;
  for (const auto &r: rules_)
    n += r.size();
  return n;
}

bool rule_matches(const DisconnectionRule &rule, const MolGraph &g,
                  std::uint32_t bond) {
  const Bond &b = g.bond(bond);
  const QueryGraph &q = rule.bond_query;
  if (!q.bond(0).pattern.matches(b))
    return false;
  const AtomPattern &p0 = q.atom(q.bond(0).begin);
  const AtomPattern &p1 = q.atom(q.bond(0).end);
  return (p0.matches(g, b.begin) && p1.matches(g, b.end))
         || (p0.matches(g, b.end) && p1.matches(g, b.begin));
}

namespace {

bool cuttable(const MolGraph &g, const Bond &b) {
  return !b.in_ring && b.order == BondOrder::kSingle && !g.atom(b.begin).is_wildcard()
         && !g.atom(b.end).is_wildcard();
}

bool any_rule_matches(std::span<const DisconnectionRule> rules, const MolGraph &g,
                      std::uint32_t bond) {
  for (const DisconnectionRule &rule: rules) {
    if (rule_matches(rule, g, bond))
      return true;
  }
  return false;
}

// The molecule with every cut bond replaced by a wildcard cap on each side.
// Bond k of the result came from source bond source_bond[k].
struct CappedGraph {
  MolGraph graph;
  std::vector<std::uint32_t> source_bond;
};

CappedGraph cap_cuts(const MolGraph &g, const std::vector<bool> &is_cut) {
  MolBuilder builder;
  for (const Atom &a: g.atoms())
    builder.add_atom({ a.element, a.aromatic, a.charge, a.explicit_h });
  CappedGraph capped;
  for (const Bond &b: g.bonds()) {
    if (!is_cut[b.index]) {
      builder.add_bond(b.begin, b.end, b.order);
      capped.source_bond.push_back(b.index);
      continue;
    }
    for (auto end: { b.begin, b.end }) {
      const auto w = builder.add_atom({ Element::kWildcard, false, 0, std::nullopt });
      builder.add_bond(end, w, BondOrder::kSingle);
      capped.source_bond.push_back(kNoSourceAtom);
    }
  }
  capped.graph = builder.build();
  return capped;
}

// True when cutting `bond` would leave `side` in a bare methyl, ethyl or
// n-propyl fragment (wildcards ignored).
bool small_alkyl_product(const MolGraph &g, const std::vector<bool> &is_cut,
                         std::uint32_t bond, std::uint32_t side) {
  std::vector<bool> seen(g.num_atoms(), false);
  std::vector<std::uint32_t> stack { side };
  seen[side] = true;
  std::size_t atoms = 0, bonds = 0;
  while (!stack.empty()) {
    const auto a = stack.back();
    stack.pop_back();
    const Atom &atom = g.atom(a);
    if (atom.is_wildcard())
      continue;
    if (atom.element != Element::kC || atom.aromatic || atom.charge != 0 || ++atoms > 3)
      return false;
    for (Neighbor nb: g.neighbors(a)) {
      if (nb.bond == bond || is_cut[nb.bond] || g.atom(nb.atom).is_wildcard())
        continue;
      if (g.bond(nb.bond).order != BondOrder::kSingle)
        return false;
      ++bonds;
      if (!seen[nb.atom]) {
        seen[nb.atom] = true;
        stack.push_back(nb.atom);
      }
    }
  }
  return bonds / 2 + 1 == atoms;
}

// RECAP is applied hierarchically: rules are re-evaluated on the products
// (where cut stubs are wildcards) until nothing changes, and a cut is
// skipped when it would release a methyl, ethyl or n-propyl fragment.
CutSet hierarchical_cuts(const MolGraph &g, std::span<const DisconnectionRule> rules) {
  std::vector<bool> is_cut(g.num_bonds(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    const CappedGraph capped = cap_cuts(g, is_cut);
    for (const Bond &b: capped.graph.bonds()) {
      const auto source = capped.source_bond[b.index];
      if (source == kNoSourceAtom || !cuttable(capped.graph, b)
          || !any_rule_matches(rules, capped.graph, b.index))
        continue;
      const Bond &sb = g.bond(source);
      if (small_alkyl_product(g, is_cut, source, sb.begin)
          || small_alkyl_product(g, is_cut, source, sb.end))
        continue;
      is_cut[source] = true;
      changed = true;
    }
  }
  CutSet cuts;
  for (std::uint32_t b = 0; b < g.num_bonds(); ++b) {
    if (is_cut[b])
      cuts.push_back(b);
  }
  return cuts;
}

}  // namespace

CutSet eligible_bonds(const MolGraph &g, FragmentationScheme scheme,
                      const RuleTable &table) {
  const auto rules = table.rules(scheme);
  if (scheme == FragmentationScheme::kRECAP)
    return hierarchical_cuts(g, rules);
  CutSet cuts;
  for (const Bond &b: g.bonds()) {
    if (cuttable(g, b) && any_rule_matches(rules, g, b.index))
      cuts.push_back(b.index);
  }
  return cuts;
}

std::optional<AttachmentRef> FragmentSet::partner(const AttachmentRef &ref) const {
  for (const AttachmentPair &p: pairs) {
    if (p.first == ref)
      return p.second;
    if (p.second == ref)
      return p.first;
  }
  return std::nullopt;
}

FragmentSet fragment(const MolGraph &g, std::span<const std::uint32_t> cuts) {
  const auto n = g.num_atoms();
  std::vector<bool> is_cut(g.num_bonds(), false);
  for (auto c: cuts) {
    if (c >= g.num_bonds())
      throw Error(ErrorKind::kSyntax, "cut bond index out of range");
    const Bond &b = g.bond(c);
    if (b.in_ring || b.order != BondOrder::kSingle)
      throw Error(ErrorKind::kSyntax, "only acyclic single bonds can be cut");
    if (is_cut[c])
      throw Error(ErrorKind::kSyntax, "duplicate cut bond");
    is_cut[c] = true;
  }

  // Components of the graph without the cut bonds, numbered by their lowest
  // atom index.
  constexpr std::uint32_t kUnset = kNoSourceAtom;
  std::vector<std::uint32_t> comp(n, kUnset);
  std::uint32_t ncomp = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (comp[s] != kUnset)
      continue;
    std::vector<std::uint32_t> stack { s };
    comp[s] = ncomp;
    while (!stack.empty()) {
      const auto a = stack.back();
      stack.pop_back();
      for (Neighbor nb: g.neighbors(a)) {
        if (!is_cut[nb.bond] && comp[nb.atom] == kUnset) {
          comp[nb.atom] = ncomp;
          stack.push_back(nb.atom);
        }
      }
    }
    ++ncomp;
  }

  std::vector<MolBuilder> builders(ncomp);
  std::vector<std::vector<std::uint32_t>> sources(ncomp);
  std::vector<std::uint32_t> local(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    const Atom &atom = g.atom(a);
    local[a] = builders[comp[a]].add_atom(
        { atom.element, atom.aromatic, atom.charge, atom.explicit_h });
    sources[comp[a]].push_back(a);
  }
  for (const Bond &b: g.bonds()) {
    if (!is_cut[b.index])
      builders[comp[b.begin]].add_bond(local[b.begin], local[b.end], b.order);
  }

  FragmentSet set;
  std::vector<std::uint32_t> sorted_cuts(cuts.begin(), cuts.end());
  std::sort(sorted_cuts.begin(), sorted_cuts.end());
  for (auto c: sorted_cuts) {
    const Bond &b = g.bond(c);
    AttachmentRef refs[2];
    const std::uint32_t ends[2] = { b.begin, b.end };
    for (int k = 0; k < 2; ++k) {
      const auto f = comp[ends[k]];
      const auto w = builders[f].add_atom({ Element::kWildcard, false, 0, std::nullopt });
      builders[f].add_bond(local[ends[k]], w, BondOrder::kSingle);
      sources[f].push_back(kNoSourceAtom);
      refs[k] = { f, w };
    }
    set.pairs.push_back({ refs[0], refs[1], c });
  }

  set.fragments.reserve(ncomp);
  for (std::uint32_t f = 0; f < ncomp; ++f) {
    try {
      set.fragments.push_back({ builders[f].build(), std::move(sources[f]) });
    } catch (const Error &e) {
      throw Error(ErrorKind::kFragmentationFailure, e.what());
    }
  }
  return set;
}

MolGraph reassemble(const FragmentSet &set) {
  MolBuilder builder;
  std::vector<std::vector<std::uint32_t>> index(set.fragments.size());
  for (std::size_t f = 0; f < set.fragments.size(); ++f) {
    const MolGraph &frag = set.fragments[f].graph;
    index[f].assign(frag.num_atoms(), kNoSourceAtom);
    for (const Atom &a: frag.atoms()) {
      if (!a.is_wildcard())
        index[f][a.index] = builder.add_atom({ a.element, a.aromatic, a.charge, a.explicit_h });
    }
    for (const Bond &b: frag.bonds()) {
      if (index[f][b.begin] != kNoSourceAtom && index[f][b.end] != kNoSourceAtom)
        builder.add_bond(index[f][b.begin], index[f][b.end], b.order);
    }
  }
  auto anchor = [&](const AttachmentRef &r) {
    const MolGraph &frag = set.fragments[r.fragment].graph;
    return index[r.fragment][frag.neighbors(r.atom)[0].atom];
  };
  for (const AttachmentPair &p: set.pairs)
    builder.add_bond(anchor(p.first), anchor(p.second), BondOrder::kSingle);
  return builder.build();
}

FragmentCountStats fragment_count_stats(std::span<const MolGraph> corpus,
                                        FragmentationScheme scheme,
                                        const RuleTable &table) {
  if (corpus.empty())
    throw Error(ErrorKind::kEmptyCorpus, "fragment statistics need a non-empty corpus");
  FragmentCountStats stats;
  std::size_t total = 0;
  for (const MolGraph &g: corpus) {
    try {
      const auto set = fragment(g, eligible_bonds(g, scheme, table));
      ++stats.histogram[set.fragments.size()];
      total += set.fragments.size();
      ++stats.molecules;
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::kFragmentationFailure)
        throw;
      ++stats.failures;
    }
  }
  if (stats.molecules > 0)
    stats.mean = static_cast<double>(total) / static_cast<double>(stats.molecules);
  return stats;
}

}  // namespace safekit
