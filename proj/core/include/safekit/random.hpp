//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_RANDOM_HPP_
#define SAFEKIT_RANDOM_HPP_

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace safekit {

// std::mt19937_64 is bit-exact across standard libraries, the
// distributions in <random> are not. These helpers stay portable.
using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream seed for item `index` of a run seeded with `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

inline double uniform_real(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_index(Rng &rng, std::uint64_t n) {
  return rng() % n;
}

template <class T>
void shuffle(std::vector<T> &v, Rng &rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

inline std::vector<std::uint32_t> random_permutation(std::uint32_t n, Rng &rng) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0U);
  shuffle(p, rng);
  return p;
}

}  // namespace safekit

#endif  // SAFEKIT_RANDOM_HPP_
