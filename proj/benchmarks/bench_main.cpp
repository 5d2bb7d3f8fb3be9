//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

#include "safekit/fingerprint.hpp"
#include "safekit/generation.hpp"
#include "safekit/metrics.hpp"
#include "safekit/ngram.hpp"
#include "safekit/patterns.hpp"
#include "safekit/safe.hpp"
#include "safekit/smi_io.hpp"
#include "safekit/smiles.hpp"

namespace {

using namespace safekit;

const std::vector<std::string> &corpus() {
  static const std::vector<std::string> lines = [] {
    auto all = read_smiles_file(SAFEKIT_BENCH_DATA);
    all.resize(std::min<std::size_t>(all.size(), 2000));
    return all;
  }();
  return lines;
}

const std::vector<MolGraph> &graphs() {
  static const std::vector<MolGraph> out = [] {
    std::vector<MolGraph> g;
    for (const auto &s: corpus())
      g.push_back(parse_smiles(s));
    return g;
  }();
  return out;
}

void BM_Parse(benchmark::State &state) {
  std::size_t i = 0;
  for (auto _: state) {
    benchmark::DoNotOptimize(parse_smiles(corpus()[i++ % corpus().size()]));
  }
}
BENCHMARK(BM_Parse);

void BM_Canonical(benchmark::State &state) {
  std::size_t i = 0;
  for (auto _: state) {
    benchmark::DoNotOptimize(canonical_smiles(graphs()[i++ % graphs().size()]));
  }
}
BENCHMARK(BM_Canonical);

void BM_Encode(benchmark::State &state) {
  const auto scheme = static_cast<FragmentationScheme>(state.range(0));
  std::size_t i = 0;
  for (auto _: state) {
    benchmark::DoNotOptimize(encode(graphs()[i++ % graphs().size()], scheme));
  }
  state.SetLabel(std::string(scheme_name(scheme)));
}
BENCHMARK(BM_Encode)->DenseRange(0, static_cast<int>(kAllSchemes.size()) - 1);

void BM_ScaffoldMatch(benchmark::State &state) {
  const QueryGraph q = scaffold_query(parse_smiles("[*]c1ccccc1[*]"));
  std::size_t i = 0;
  for (auto _: state) {
    benchmark::DoNotOptimize(has_substructure(q, graphs()[i++ % graphs().size()]));
  }
}
BENCHMARK(BM_ScaffoldMatch);

void BM_Fingerprint(benchmark::State &state) {
  std::size_t i = 0;
  for (auto _: state) {
    benchmark::DoNotOptimize(morgan_fingerprint(graphs()[i++ % graphs().size()]));
  }
}
BENCHMARK(BM_Fingerprint);

void BM_Sample(benchmark::State &state) {
  static const NGramModel model = NGramModel::train_text(corpus());
  SamplerConfig c;
  for (auto _: state) {
    benchmark::DoNotOptimize(sample(model, c));
    ++c.seed;
  }
}
BENCHMARK(BM_Sample);

void BM_InternalDiversity(benchmark::State &state) {
  std::vector<Fingerprint> fps;
  for (std::int64_t i = 0; i < state.range(0); ++i)
    fps.push_back(morgan_fingerprint(graphs()[static_cast<std::size_t>(i) % graphs().size()]));
  for (auto _: state) {
    benchmark::DoNotOptimize(internal_diversity(fps, 1));
  }
}
BENCHMARK(BM_InternalDiversity)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
