//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_METRICS_HPP_
#define SAFEKIT_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "safekit/fingerprint.hpp"
#include "safekit/molgraph.hpp"
#include "safekit/safe.hpp"

namespace safekit {

struct ValidityResult {
  // n_valid / n_samples; 0 for empty input.
  double fraction = 0.0;
  std::size_t n_samples = 0;
  std::vector<MolGraph> valid;
  // Sample index of each entry in `valid`.
  std::vector<std::size_t> valid_index;
  // Error kind name -> count over the invalid samples.
  std::map<std::string, std::size_t> errors;
};

ValidityResult validity(std::span<const std::string> samples, unsigned threads = 0);

// Canonical strings of the parseable lines; unparseable lines are skipped.
std::unordered_set<std::string> canonical_set(std::span<const std::string> smiles,
                                              unsigned threads = 0);

// Distinct canonical strings / graph count; 0 for an empty set.
double uniqueness(std::span<const MolGraph> valid);

// Share of distinct canonical strings missing from `training`; 0 for an
// empty set.
double novelty(std::span<const MolGraph> valid,
               const std::unordered_set<std::string> &training);

struct DiversityOptions {
  // Larger sets are subsampled to this many graphs with `seed`.
  std::size_t sample_cap = 10000;
  std::uint64_t seed = 0;
  FingerprintConfig fingerprint;
  unsigned threads = 0;
};

struct Diversity {
  double value = 0.0;
  std::size_t n_used = 0;
  bool subsampled = false;
};

// 1 - mean Tanimoto over unordered pairs (power 1). Fewer than two graphs
// give 0.
Diversity internal_diversity(std::span<const MolGraph> valid,
                             const DiversityOptions &options = {});
double internal_diversity(std::span<const Fingerprint> fingerprints, unsigned threads = 0);

// Share of graphs with more than one connected component.
double fragmented_pct(std::span<const MolGraph> valid);

// A decoration scaffold or a pair of linker fragments, wildcards marking
// attachment points.
struct Constraint {
  PromptTask task = PromptTask::kDecorate;
  std::vector<MolGraph> parts;

  static Constraint scaffold(MolGraph scaffold);
  static Constraint linker(MolGraph frag_a, MolGraph frag_b);
};

// Every part is a substructure of g.
bool satisfies(const Constraint &constraint, const MolGraph &g);
double match_constraint(std::span<const MolGraph> valid, const Constraint &constraint);

enum class FilterVerdict : std::uint8_t {
  kPass,
  kCharge,
  kElement,
  kLargeRing,
};

std::string_view filter_verdict_name(FilterVerdict verdict);

// Rejects formal charges, elements outside C N O S F Cl Br H, and rings
// with more than `max_ring_size` atoms (smallest ring through each bond).
FilterVerdict moses_filter(const MolGraph &g, std::uint32_t max_ring_size = 8);

// Average atomic masses, implicit hydrogens included.
double mol_weight(const MolGraph &g);

struct MetricsReport {
  std::size_t n_samples = 0;
  std::size_t n_valid = 0;
  double validity = 0.0;
  double uniqueness = 0.0;
  double novelty = 0.0;
  double int_div = 0.0;
  double fragmented_pct = 0.0;
  std::optional<double> match_constraint;
  std::optional<double> filter_pass;
  double mol_weight_mean = 0.0;
  double mol_weight_std = 0.0;

  std::size_t int_div_used = 0;
  bool int_div_subsampled = false;
  std::size_t int_div_cap = 0;
  std::uint64_t int_div_seed = 0;
  std::uint32_t max_ring_size = 0;
  bool empty_input = false;
  bool no_valid = false;
  std::map<std::string, std::size_t> invalid_reasons;
};

struct ReportOptions {
  DiversityOptions diversity;
  std::uint32_t max_ring_size = 8;
  bool filter = true;
  unsigned threads = 0;
};

// Validity over all samples; everything else over the valid ones.
MetricsReport build_report(std::span<const std::string> samples,
                           const std::unordered_set<std::string> &training,
                           const Constraint *constraint = nullptr,
                           const ReportOptions &options = {});

struct MeanStd {
  double mean = 0.0;
  // Sample standard deviation; 0 for fewer than two values.
  double std = 0.0;
};

MeanStd mean_std(std::span<const double> values);

// "0.995 ± 0.001"
std::string format_mean_std(const MeanStd &value, int precision = 3);

struct RunSummary {
  std::string representation;
  std::string model;
  std::vector<MetricsReport> runs;
  MeanStd validity;
  MeanStd uniqueness;
  MeanStd novelty;
  MeanStd int_div;
  MeanStd fragmented_pct;
  std::optional<MeanStd> match_constraint;
};

RunSummary summarize(std::string representation, std::string model,
                     std::vector<MetricsReport> runs);

// Representation,Model,Validity,Uniqueness,Novelty,Int.Div,Fragmented
std::string csv_header();
std::string csv_row(const RunSummary &summary);

std::string to_json(const MetricsReport &report, int indent = 2);
std::string to_json(const RunSummary &summary, int indent = 2);

}  // namespace safekit

#endif  // SAFEKIT_METRICS_HPP_
