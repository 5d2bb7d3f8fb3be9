//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "safekit/random.hpp"
#include "safekit/smiles.hpp"

namespace safekit {

namespace {

constexpr int kMaxRingDigit = 99;

void append_atom(std::string &out, const MolGraph &g, const Atom &a) {
  const int bond_sum = g.bond_sum(a.index);
  const auto default_h = default_implicit_hydrogens(
      { a.element, a.aromatic, a.charge, bond_sum });

  std::string symbol(element_symbol(a.element));
  if (a.aromatic)
    symbol[0] = static_cast<char>(symbol[0] - 'A' + 'a');

  const bool bracket = a.charge != 0 || a.element == Element::kH || !default_h
                       || *default_h != a.total_h();
  if (!bracket) {
    out += symbol;
    return;
  }

  out += '[';
  out += symbol;
  if (const int h = a.total_h(); h > 0) {
    out += 'H';
    if (h > 1)
      out += std::to_string(h);
  }
  if (a.charge != 0) {
    out += a.charge > 0 ? '+' : '-';
    if (std::abs(a.charge) > 1)
      out += std::to_string(std::abs(a.charge));
  }
  out += ']';
}

std::string_view bond_text(BondOrder order, bool both_aromatic) {
  switch (order) {
  case BondOrder::kSingle:
    return both_aromatic ? "-" : "";
  case BondOrder::kDouble:
    return "=";
  case BondOrder::kTriple:
    return "#";
  case BondOrder::kAromatic:
    return both_aromatic ? "" : ":";
  }
  return "";
}

class SmilesWriter {
public:
  SmilesWriter(const MolGraph &g, const SmilesWriteOptions &opt)
      : g_(g), opt_(opt), n_(g.num_atoms()) { }

  std::string write(SmilesWriteTrace *trace) {
    order_index_.assign(n_, kNone);
    parent_bond_.assign(n_, kNone);
    children_.assign(n_, {});
    open_at_.assign(n_, {});
    close_at_.assign(n_, {});
    closure_seen_.assign(g_.num_bonds(), false);

    std::vector<std::uint32_t> roots;
    std::vector<std::uint32_t> by_rank(n_);
    std::iota(by_rank.begin(), by_rank.end(), 0U);
    std::sort(by_rank.begin(), by_rank.end(), [&](std::uint32_t a, std::uint32_t b) {
      return rank(a) < rank(b);
    });
    for (std::uint32_t a: by_rank) {
      if (omitted(a) || order_index_[a] != kNone)
        continue;
      roots.push_back(a);
      visit(a, kNone);
    }

    // Ring-closure lists in emission order of the other endpoint.
    for (auto &list: open_at_)
      std::sort(list.begin(), list.end(), [&](std::uint32_t x, std::uint32_t y) {
        return order_index_[closures_[x].closer] < order_index_[closures_[y].closer];
      });
    for (auto &list: close_at_)
      std::sort(list.begin(), list.end(), [&](std::uint32_t x, std::uint32_t y) {
        return order_index_[closures_[x].opener] < order_index_[closures_[y].opener];
      });

    digit_used_.fill(false);
    closure_digit_.assign(closures_.size(), 0);
    std::string out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (i > 0)
        out += '.';
      emit(out, roots[i]);
    }

    if (trace) {
      trace->atom_order = visit_order_;
      std::sort(ring_digits_.begin(), ring_digits_.end());
      ring_digits_.erase(std::unique(ring_digits_.begin(), ring_digits_.end()),
                         ring_digits_.end());
      trace->ring_digits = ring_digits_;
    }
    return out;
  }

private:
  static constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);

  struct Closure {
    std::uint32_t opener;
    std::uint32_t closer;
    std::uint32_t bond;
  };

  std::uint32_t rank(std::uint32_t a) const {
    return opt_.ranks.empty() ? a : opt_.ranks[a];
  }
  bool omitted(std::uint32_t a) const { return !opt_.omit.empty() && opt_.omit[a]; }

  std::vector<Neighbor> sorted_neighbors(std::uint32_t a) const {
    std::vector<Neighbor> nbrs;
    for (Neighbor nb: g_.neighbors(a)) {
      if (!omitted(nb.atom))
        nbrs.push_back(nb);
    }
    std::sort(nbrs.begin(), nbrs.end(), [&](Neighbor x, Neighbor y) {
      return rank(x.atom) < rank(y.atom);
    });
    return nbrs;
  }

  void visit(std::uint32_t a, std::uint32_t parent_bond) {
    order_index_[a] = static_cast<std::uint32_t>(visit_order_.size());
    visit_order_.push_back(a);
    parent_bond_[a] = parent_bond;
    for (Neighbor nb: sorted_neighbors(a)) {
      if (nb.bond == parent_bond)
        continue;
      if (order_index_[nb.atom] == kNone) {
        children_[a].push_back(nb.atom);
        visit(nb.atom, nb.bond);
      } else if (!closure_seen_[nb.bond]) {
        closure_seen_[nb.bond] = true;
        const auto id = static_cast<std::uint32_t>(closures_.size());
        closures_.push_back({ nb.atom, a, nb.bond });
        open_at_[nb.atom].push_back(id);
        close_at_[a].push_back(id);
      }
    }
  }

  bool both_aromatic(const Bond &b) const {
    return g_.atom(b.begin).aromatic && g_.atom(b.end).aromatic;
  }

  int allocate_digit() {
    for (int d = 1; d <= kMaxRingDigit; ++d) {
      if (!digit_used_[d]) {
        digit_used_[d] = true;
        ring_digits_.push_back(d);
        return d;
      }
    }
    throw Error(ErrorKind::kSyntax, "more than 99 simultaneously open rings");
  }

  void emit(std::string &out, std::uint32_t a) {
    append_atom(out, g_, g_.atom(a));

    std::vector<int> released;
    for (std::uint32_t c: close_at_[a]) {
      const Bond &b = g_.bond(closures_[c].bond);
      out += bond_text(b.order, both_aromatic(b));
      out += format_ring_digit(closure_digit_[c]);
      released.push_back(closure_digit_[c]);
    }
    for (std::uint32_t c: open_at_[a]) {
      closure_digit_[c] = allocate_digit();
      out += format_ring_digit(closure_digit_[c]);
    }
    for (int d: released)
      digit_used_[d] = false;

    if (!opt_.external.empty()) {
      for (const ExternalClosure &e: opt_.external[a]) {
        if (e.explicit_order)
          out += bond_text(e.order, true);
        out += format_ring_digit(e.digit);
      }
    }

    const auto &kids = children_[a];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const Bond &b = g_.bond(parent_bond_[kids[i]]);
      const bool last = i + 1 == kids.size();
      if (!last)
        out += '(';
      out += bond_text(b.order, both_aromatic(b));
      emit(out, kids[i]);
      if (!last)
        out += ')';
    }
  }

  const MolGraph &g_;
  const SmilesWriteOptions &opt_;
  std::uint32_t n_;

  std::vector<std::uint32_t> order_index_;
  std::vector<std::uint32_t> visit_order_;
  std::vector<std::uint32_t> parent_bond_;
  std::vector<std::vector<std::uint32_t>> children_;
  std::vector<Closure> closures_;
  std::vector<std::vector<std::uint32_t>> open_at_, close_at_;
  std::vector<bool> closure_seen_;
  std::vector<int> closure_digit_;
  std::array<bool, kMaxRingDigit + 1> digit_used_ {};
  std::vector<int> ring_digits_;
};

}  // namespace

std::string format_ring_digit(int digit) {
  if (digit < 10)
    return std::string(1, static_cast<char>('0' + digit));
  return "%" + std::to_string(digit);
}

std::string write_smiles(const MolGraph &g, const SmilesWriteOptions &options,
                         SmilesWriteTrace *trace) {
  return SmilesWriter(g, options).write(trace);
}

std::string write_smiles(const MolGraph &g,
                         std::span<const std::uint32_t> start_order) {
  SmilesWriteOptions opt;
  std::vector<std::uint32_t> ranks;
  if (!start_order.empty()) {
    ranks.resize(g.num_atoms());
    for (std::uint32_t k = 0; k < start_order.size(); ++k)
      ranks[start_order[k]] = k;
    opt.ranks = ranks;
  }
  return write_smiles(g, opt);
}

std::string randomize_smiles(const MolGraph &g, std::uint64_t seed) {
  Rng rng(seed);
  auto order = random_permutation(g.num_atoms(), rng);
  return write_smiles(g, order);
}

}  // namespace safekit
