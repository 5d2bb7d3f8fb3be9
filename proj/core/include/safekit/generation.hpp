//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_GENERATION_HPP_
#define SAFEKIT_GENERATION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "safekit/molgraph.hpp"
#include "safekit/ngram.hpp"
#include "safekit/safe.hpp"

namespace safekit {

struct SamplerConfig {
  // Temperatures below 1e-6 decode greedily.
  double temperature = 1.0;
  // Upper bound on generated tokens, prompt excluded.
  std::uint32_t max_tokens = 256;
  std::uint64_t seed = 0;
  // When false, eos is masked and generation always runs to max_tokens.
  bool stop_on_eos = true;
};

struct Generation {
  std::string text;
  std::uint32_t tokens = 0;
  // max_tokens was reached before eos.
  bool truncated = false;
};

// <unk> and <bos> are never sampled. Same model and config give the same
// output.
Generation sample(const NGramModel &model, const SamplerConfig &config);

// Sample i uses seed derive_seed(config.seed, i). Runs on `threads` workers
// (0 = hardware concurrency); the result does not depend on the count.
std::vector<Generation> sample_many(const NGramModel &model, const SamplerConfig &config,
                                    std::size_t n, unsigned threads = 0);

// Emits the prompt verbatim and continues sampling after it. Throws
// kOutOfVocabularyPrompt when a prompt token is not in the vocabulary.
Generation complete(const NGramModel &model, const std::string &prompt,
                    const SamplerConfig &config);
Generation complete(const NGramModel &model, const Prompt &prompt,
                    const SamplerConfig &config);

struct ConstrainedSample {
  Generation generation;
  std::optional<MolGraph> molecule;
  bool valid = false;
  bool fragmented = false;
  bool constraint_matched = false;
};

// Scaffold decoration: n samples completed from scaffold_prompt(scaffold).
// Every sample is returned; invalid ones carry valid = false.
std::vector<ConstrainedSample> decorate(const NGramModel &model, const MolGraph &scaffold,
                                        const SamplerConfig &config, std::size_t n,
                                        unsigned threads = 0);

// Linker design: constraint_matched requires both fragments.
std::vector<ConstrainedSample> link(const NGramModel &model, const MolGraph &frag_a,
                                    const MolGraph &frag_b, const SamplerConfig &config,
                                    std::size_t n, unsigned threads = 0);

}  // namespace safekit

#endif  // SAFEKIT_GENERATION_HPP_
