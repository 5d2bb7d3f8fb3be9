//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "safekit/fingerprint.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

#include "safekit/random.hpp"

namespace safekit {

Fingerprint::Fingerprint(std::uint32_t bits): bits_(bits), words_((bits + 63) / 64, 0) { }

bool Fingerprint::test(std::uint32_t bit) const {
  return (words_[bit / 64] >> (bit % 64)) & 1U;
}

void Fingerprint::set(std::uint32_t bit) {
  words_[bit / 64] |= std::uint64_t { 1 } << (bit % 64);
}

std::uint32_t Fingerprint::popcount() const {
  std::uint32_t n = 0;
  for (auto w: words_)
    n += static_cast<std::uint32_t>(std::popcount(w));
  return n;
}

std::vector<std::uint32_t> Fingerprint::on_bits() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < bits_; ++i) {
    if (test(i))
      out.push_back(i);
  }
  return out;
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

std::uint64_t atom_invariant(const MolGraph &g, const Atom &a) {
  std::uint32_t heavy = 0;
  for (Neighbor nb: g.neighbors(a.index)) {
    if (g.atom(nb.atom).element != Element::kH)
      ++heavy;
  }
  std::uint64_t h = mix(0, static_cast<std::uint64_t>(a.element));
  h = mix(h, a.aromatic);
  h = mix(h, static_cast<std::uint64_t>(a.charge + 16));
  h = mix(h, static_cast<std::uint64_t>(a.total_h()));
  h = mix(h, heavy);
  return mix(h, a.in_ring);
}

}  // namespace

Fingerprint morgan_fingerprint(const MolGraph &g, const FingerprintConfig &config) {
  if (config.bits == 0)
    throw std::invalid_argument("fingerprint needs at least one bit");
  Fingerprint fp(config.bits);
  std::vector<std::uint64_t> ids(g.num_atoms());
  for (const Atom &a: g.atoms()) {
    ids[a.index] = atom_invariant(g, a);
    fp.set(static_cast<std::uint32_t>(ids[a.index] % config.bits));
  }
  std::vector<std::uint64_t> next(g.num_atoms());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> env;
  for (std::uint32_t round = 1; round <= config.radius; ++round) {
    for (const Atom &a: g.atoms()) {
      env.clear();
      for (Neighbor nb: g.neighbors(a.index))
        env.emplace_back(static_cast<std::uint64_t>(g.bond(nb.bond).order), ids[nb.atom]);
      std::sort(env.begin(), env.end());
      std::uint64_t h = mix(round, ids[a.index]);
      for (const auto &[order, id]: env)
        h = mix(mix(h, order), id);
      next[a.index] = h;
      fp.set(static_cast<std::uint32_t>(h % config.bits));
    }
    ids.swap(next);
  }
  return fp;
}

double tanimoto(const Fingerprint &a, const Fingerprint &b) {
  if (a.size() != b.size())
    throw std::invalid_argument("fingerprint sizes differ");
  std::uint64_t both = 0;
  std::uint64_t either = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    both += static_cast<std::uint64_t>(std::popcount(a.words()[i] & b.words()[i]));
    either += static_cast<std::uint64_t>(std::popcount(a.words()[i] | b.words()[i]));
  }
  return either == 0 ? 1.0 : static_cast<double>(both) / static_cast<double>(either);
}

}  // namespace safekit
