//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "safekit/generation.hpp"

#include <cmath>
#include <limits>
#include <variant>

#include "safekit/parallel.hpp"
#include "safekit/error.hpp"
#include "safekit/patterns.hpp"
#include "safekit/random.hpp"
#include "safekit/smiles.hpp"

namespace safekit {
namespace {

constexpr double kGreedyTemperature = 1e-6;

std::uint32_t pick_token(std::vector<double> &p, const SamplerConfig &config, Rng &rng) {
  p[Vocabulary::kBos] = 0.0;
  p[Vocabulary::kUnk] = 0.0;
  if (!config.stop_on_eos)
    p[Vocabulary::kEos] = 0.0;

  if (config.temperature < kGreedyTemperature) {
    std::uint32_t best = 0;
    for (std::uint32_t i = 1; i < p.size(); ++i) {
      if (p[i] > p[best])
        best = i;
    }
    if (p[best] <= 0.0)
      throw Error(ErrorKind::kModelFormat, "model has no token to sample");
    return best;
  }

  // p^(1/T), renormalized in log space.
  double max_log = -std::numeric_limits<double>::infinity();
  for (double &x: p) {
    x = x > 0.0 ? std::log(x) / config.temperature : -std::numeric_limits<double>::infinity();
    max_log = std::max(max_log, x);
  }
  if (!std::isfinite(max_log))
    throw Error(ErrorKind::kModelFormat, "model has no token to sample");
  double sum = 0.0;
  for (double &x: p) {
    x = std::exp(x - max_log);
    sum += x;
  }
  const double r = uniform_real(rng) * sum;
  double acc = 0.0;
  std::uint32_t last = 0;
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0)
      continue;
    acc += p[i];
    last = i;
    if (r < acc)
      return i;
  }
  return last;
}

Generation continue_from(const NGramModel &model, std::vector<std::uint32_t> history,
                         std::string prefix, const SamplerConfig &config) {
  Rng rng(config.seed);
  Generation out;
  out.text = std::move(prefix);
  for (std::uint32_t step = 0; step < config.max_tokens; ++step) {
    auto p = model.distribution(history);
    const auto tok = pick_token(p, config, rng);
    if (tok == Vocabulary::kEos)
      return out;
    out.text += model.vocabulary().surface(tok);
    ++out.tokens;
    history.push_back(tok);
  }
  out.truncated = true;
  return out;
}

std::vector<std::uint32_t> prompt_history(const NGramModel &model, const std::string &prompt) {
  std::vector<std::uint32_t> history { Vocabulary::kBos };
  for (const Token &t: tokenize(prompt)) {
    auto id = model.vocabulary().find(t.surface);
    if (!id)
      throw Error(ErrorKind::kOutOfVocabularyPrompt,
                  "prompt token '" + t.surface + "' is not in the model vocabulary");
    history.push_back(*id);
  }
  return history;
}

std::vector<ConstrainedSample> constrained(const NGramModel &model, const Prompt &prompt,
                                           const std::vector<QueryGraph> &queries,
                                           const SamplerConfig &config, std::size_t n,
                                           unsigned threads) {
  const auto history = prompt_history(model, prompt.text);
  std::vector<ConstrainedSample> out(n);
  parallel_for(n, threads, [&](std::size_t i) {
    SamplerConfig c = config;
    c.seed = derive_seed(config.seed, i);
    ConstrainedSample &s = out[i];
    s.generation = continue_from(model, history, prompt.text, c);
    auto parsed = try_parse_smiles(s.generation.text);
    if (auto *g = std::get_if<MolGraph>(&parsed)) {
      s.valid = true;
      s.fragmented = is_fragmented(*g);
      s.constraint_matched = true;
      for (const QueryGraph &q: queries)
        s.constraint_matched = s.constraint_matched && has_substructure(q, *g);
      s.molecule = std::move(*g);
    }
  });
  return out;
}

}  // namespace

Generation sample(const NGramModel &model, const SamplerConfig &config) {
  return continue_from(model, { Vocabulary::kBos }, {}, config);
}

std::vector<Generation> sample_many(const NGramModel &model, const SamplerConfig &config,
                                    std::size_t n, unsigned threads) {
  std::vector<Generation> out(n);
  parallel_for(n, threads, [&](std::size_t i) {
    SamplerConfig c = config;
    c.seed = derive_seed(config.seed, i);
    out[i] = sample(model, c);
  });
  return out;
}

Generation complete(const NGramModel &model, const std::string &prompt,
                    const SamplerConfig &config) {
  return continue_from(model, prompt_history(model, prompt), prompt, config);
}

Generation complete(const NGramModel &model, const Prompt &prompt,
                    const SamplerConfig &config) {
  return complete(model, prompt.text, config);
}

std::vector<ConstrainedSample> decorate(const NGramModel &model, const MolGraph &scaffold,
                                        const SamplerConfig &config, std::size_t n,
                                        unsigned threads) {
  const Prompt prompt = scaffold_prompt(scaffold);
  return constrained(model, prompt, { scaffold_query(scaffold) }, config, n, threads);
}

std::vector<ConstrainedSample> link(const NGramModel &model, const MolGraph &frag_a,
                                    const MolGraph &frag_b, const SamplerConfig &config,
                                    std::size_t n, unsigned threads) {
  const Prompt prompt = linker_prompt(frag_a, frag_b);
  return constrained(model, prompt, { scaffold_query(frag_a), scaffold_query(frag_b) },
                     config, n, threads);
}

}  // namespace safekit
