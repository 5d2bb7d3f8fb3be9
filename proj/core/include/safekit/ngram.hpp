//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_NGRAM_HPP_
#define SAFEKIT_NGRAM_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "safekit/tokenizer.hpp"

namespace safekit {

struct NGramConfig {
  std::uint32_t order = 6;
  // Absolute discount, in (0, 1).
  double discount = 0.75;
};

// Interpolated absolute-discount n-gram model over token ids:
//
//   P_k(w | h) = max(c(h,w) - D, 0) / c(h) + D * N1+(h) / c(h) * P_{k-1}(w | h')
//
// where h' drops the oldest token of h. The base distribution is uniform
// over every id except bos. Contexts never seen in training fall back to
// the next shorter one.
class NGramModel {
public:
  NGramModel() = default;

  // Sequences are token ids without bos/eos; both are added here. Throws
  // kEmptyCorpus when there are no sequences.
  static NGramModel train(std::span<const std::vector<std::uint32_t>> sequences,
                          Vocabulary vocabulary, const NGramConfig &config = {});
  // Builds the vocabulary from the lines and trains on them.
  static NGramModel train_text(std::span<const std::string> lines,
                               const NGramConfig &config = {});

  const Vocabulary &vocabulary() const { return vocab_; }
  std::uint32_t order() const { return order_; }
  double discount() const { return discount_; }

  // Next-token distribution over all vocabulary ids given the history
  // (which starts with bos). Sums to 1.
  std::vector<double> distribution(std::span<const std::uint32_t> history) const;
  double probability(std::span<const std::uint32_t> history, std::uint32_t next) const;

  // Natural-log probability of ids followed by eos, conditioned on bos.
  double log_probability(std::span<const std::uint32_t> ids) const;
  // exp of the mean negative log-likelihood per predicted token (eos
  // included). Unknown tokens score as <unk>.
  double perplexity(std::span<const std::string> lines) const;

  // Number of distinct contexts stored for an n-gram order (1..order).
  std::size_t context_count(std::uint32_t k) const;

  // Versioned binary format; byte-identical for identical models.
  void save(const std::filesystem::path &path) const;
  static NGramModel load(const std::filesystem::path &path);

private:
  struct Context {
    std::uint64_t total = 0;
    // (token, count), sorted by token.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> next;
  };

  std::uint64_t context_key(std::span<const std::uint32_t> history, std::uint32_t length) const;
  void finalize();

  Vocabulary vocab_;
  std::uint32_t order_ = 0;
  double discount_ = 0.0;
  std::uint32_t bits_ = 0;
  // tables_[k - 1] holds contexts of length k - 1.
  std::vector<std::unordered_map<std::uint64_t, Context>> tables_;
};

}  // namespace safekit

#endif  // SAFEKIT_NGRAM_HPP_
