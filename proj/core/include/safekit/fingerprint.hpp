//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_FINGERPRINT_HPP_
#define SAFEKIT_FINGERPRINT_HPP_

#include <cstdint>
#include <vector>

#include "safekit/molgraph.hpp"

namespace safekit {

struct FingerprintConfig {
  std::uint32_t bits = 2048;
  std::uint32_t radius = 2;
};

class Fingerprint {
public:
  Fingerprint() = default;
  explicit Fingerprint(std::uint32_t bits);

  std::uint32_t size() const { return bits_; }
  bool test(std::uint32_t bit) const;
  void set(std::uint32_t bit);
  std::uint32_t popcount() const;
  std::vector<std::uint32_t> on_bits() const;
  const std::vector<std::uint64_t> &words() const { return words_; }

  bool operator==(const Fingerprint &) const = default;

private:
  std::uint32_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

// Circular neighborhood fingerprint: each atom starts from an invariant of
// (element, aromaticity, charge, hydrogens, heavy degree, ring membership)
// and is rehashed `radius` times with its sorted (bond order, neighbor)
// identifiers. Every identifier from every round sets one bit. Independent of
// atom numbering.
Fingerprint morgan_fingerprint(const MolGraph &g, const FingerprintConfig &config = {});

// |a & b| / |a | b|, 1.0 when both are empty. Throws std::invalid_argument
// on a size mismatch.
double tanimoto(const Fingerprint &a, const Fingerprint &b);

}  // namespace safekit

#endif  // SAFEKIT_FINGERPRINT_HPP_
