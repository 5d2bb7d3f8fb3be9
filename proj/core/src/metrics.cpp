//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "safekit/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <variant>

#include <json.hpp>

#include "safekit/error.hpp"
#include "safekit/parallel.hpp"
#include "safekit/patterns.hpp"
#include "safekit/random.hpp"
#include "safekit/rings.hpp"
#include "safekit/smiles.hpp"

namespace safekit {

ValidityResult validity(std::span<const std::string> samples, unsigned threads) {
  std::vector<std::optional<MolGraph>> parsed(samples.size());
  std::vector<std::string> error(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    try {
      parsed[i] = parse_smiles(samples[i]);
    } catch (const Error &e) {
      error[i] = error_kind_name(e.kind());
    }
  });
  ValidityResult result;
  result.n_samples = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (parsed[i]) {
      result.valid.push_back(std::move(*parsed[i]));
      result.valid_index.push_back(i);
    } else {
      ++result.errors[error[i]];
    }
  }
  if (!samples.empty())
    result.fraction = static_cast<double>(result.valid.size()) / static_cast<double>(samples.size());
  return result;
}

namespace {

std::vector<std::string> canonical_all(std::span<const MolGraph> graphs, unsigned threads) {
  std::vector<std::string> out(graphs.size());
  parallel_for(graphs.size(), threads, [&](std::size_t i) { out[i] = canonical_smiles(graphs[i]); });
  return out;
}

double uniqueness_of(const std::vector<std::string> &canonical) {
  if (canonical.empty())
    return 0.0;
  const std::unordered_set<std::string> distinct(canonical.begin(), canonical.end());
  return static_cast<double>(distinct.size()) / static_cast<double>(canonical.size());
}

double novelty_of(const std::vector<std::string> &canonical,
                  const std::unordered_set<std::string> &training) {
  const std::unordered_set<std::string> distinct(canonical.begin(), canonical.end());
  if (distinct.empty())
    return 0.0;
  std::size_t novel = 0;
  for (const auto &s: distinct)
    novel += training.count(s) == 0;
  return static_cast<double>(novel) / static_cast<double>(distinct.size());
}

}  // namespace

std::unordered_set<std::string> canonical_set(std::span<const std::string> smiles,
                                              unsigned threads) {
  std::vector<std::string> canonical(smiles.size());
  parallel_for(smiles.size(), threads, [&](std::size_t i) {
    auto parsed = try_parse_smiles(smiles[i]);
    if (const auto *g = std::get_if<MolGraph>(&parsed))
      canonical[i] = canonical_smiles(*g);
  });
  std::unordered_set<std::string> out;
  for (auto &s: canonical) {
    if (!s.empty())
      out.insert(std::move(s));
  }
  return out;
}

double uniqueness(std::span<const MolGraph> valid) {
  return uniqueness_of(canonical_all(valid, 0));
}

double novelty(std::span<const MolGraph> valid, const std::unordered_set<std::string> &training) {
  return novelty_of(canonical_all(valid, 0), training);
}

double internal_diversity(std::span<const Fingerprint> fps, unsigned threads) {
  const std::size_t n = fps.size();
  if (n < 2)
    return 0.0;
  for (const Fingerprint &fp: fps) {
    if (fp.size() != fps[0].size())
      throw std::invalid_argument("fingerprint sizes differ");
  }
  std::vector<std::uint64_t> counts(n);
  for (std::size_t i = 0; i < n; ++i)
    counts[i] = fps[i].popcount();
  // Per-row sums, added in row order so the result does not depend on threads.
  std::vector<double> rows(n, 0.0);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto &wi = fps[i].words();
    double s = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto &wj = fps[j].words();
      std::uint64_t both = 0;
      for (std::size_t k = 0; k < wi.size(); ++k)
        both += static_cast<std::uint64_t>(std::popcount(wi[k] & wj[k]));
      const std::uint64_t either = counts[i] + counts[j] - both;
      s += either == 0 ? 1.0 : static_cast<double>(both) / static_cast<double>(either);
    }
    rows[i] = s;
  });
  const double total = std::accumulate(rows.begin(), rows.end(), 0.0);
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return 1.0 - total / pairs;
}

Diversity internal_diversity(std::span<const MolGraph> valid, const DiversityOptions &options) {
  std::vector<std::uint32_t> chosen(valid.size());
  std::iota(chosen.begin(), chosen.end(), 0U);
  Diversity result;
  if (options.sample_cap > 0 && valid.size() > options.sample_cap) {
    Rng rng(options.seed);
    shuffle(chosen, rng);
    chosen.resize(options.sample_cap);
    std::sort(chosen.begin(), chosen.end());
    result.subsampled = true;
  }
  std::vector<Fingerprint> fps(chosen.size());
  parallel_for(chosen.size(), options.threads, [&](std::size_t i) {
    fps[i] = morgan_fingerprint(valid[chosen[i]], options.fingerprint);
  });
  result.n_used = fps.size();
  result.value = internal_diversity(fps, options.threads);
  return result;
}

double fragmented_pct(std::span<const MolGraph> valid) {
  if (valid.empty())
    return 0.0;
  const auto n = std::count_if(valid.begin(), valid.end(),
                               [](const MolGraph &g) { return g.component_count() > 1; });
  return static_cast<double>(n) / static_cast<double>(valid.size());
}

Constraint Constraint::scaffold(MolGraph scaffold) {
  Constraint c;
  c.task = PromptTask::kDecorate;
  c.parts.push_back(std::move(scaffold));
  return c;
}

Constraint Constraint::linker(MolGraph frag_a, MolGraph frag_b) {
  Constraint c;
  c.task = PromptTask::kLink;
  c.parts.push_back(std::move(frag_a));
  c.parts.push_back(std::move(frag_b));
  return c;
}

bool satisfies(const Constraint &constraint, const MolGraph &g) {
  return std::all_of(constraint.parts.begin(), constraint.parts.end(),
                     [&](const MolGraph &part) { return has_substructure(scaffold_query(part), g); });
}

namespace {

std::vector<bool> satisfied_all(std::span<const MolGraph> graphs, const Constraint &constraint,
                                unsigned threads) {
  std::vector<QueryGraph> queries;
  for (const MolGraph &part: constraint.parts)
    queries.push_back(scaffold_query(part));
  std::vector<char> hit(graphs.size(), 0);
  parallel_for(graphs.size(), threads, [&](std::size_t i) {
    hit[i] = std::all_of(queries.begin(), queries.end(),
                         [&](const QueryGraph &q) { return has_substructure(q, graphs[i]); });
  });
  return { hit.begin(), hit.end() };
}

double share(const std::vector<bool> &flags) {
  if (flags.empty())
    return 0.0;
  return static_cast<double>(std::count(flags.begin(), flags.end(), true))
         / static_cast<double>(flags.size());
}

}  // namespace

double match_constraint(std::span<const MolGraph> valid, const Constraint &constraint) {
  return share(satisfied_all(valid, constraint, 0));
}

std::string_view filter_verdict_name(FilterVerdict verdict) {
  switch (verdict) {
  case FilterVerdict::kPass:
    return "pass";
  case FilterVerdict::kCharge:
    return "charge";
  case FilterVerdict::kElement:
    return "element";
  case FilterVerdict::kLargeRing:
    return "large_ring";
  }
  return "unknown";
}

FilterVerdict moses_filter(const MolGraph &g, std::uint32_t max_ring_size) {
  for (const Atom &a: g.atoms()) {
    if (a.charge != 0)
      return FilterVerdict::kCharge;
  }
  for (const Atom &a: g.atoms()) {
    switch (a.element) {
    case Element::kC:
    case Element::kN:
    case Element::kO:
    case Element::kS:
    case Element::kF:
    case Element::kCl:
    case Element::kBr:
    case Element::kH:
      break;
    default:
      return FilterVerdict::kElement;
    }
  }
  if (largest_smallest_ring(g) > max_ring_size)
    return FilterVerdict::kLargeRing;
  return FilterVerdict::kPass;
}

double mol_weight(const MolGraph &g) {
  const double h = atomic_mass(Element::kH);
  double total = 0.0;
  for (const Atom &a: g.atoms())
    total += atomic_mass(a.element) + h * a.total_h();
  return total;
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty())
    return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v: values)
      ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / (n - 1.0));
  }
  return out;
}

MetricsReport build_report(std::span<const std::string> samples,
                           const std::unordered_set<std::string> &training,
                           const Constraint *constraint, const ReportOptions &options) {
  MetricsReport r;
  r.int_div_cap = options.diversity.sample_cap;
  r.int_div_seed = options.diversity.seed;
  r.max_ring_size = options.max_ring_size;
  r.empty_input = samples.empty();

  ValidityResult v = validity(samples, options.threads);
  r.n_samples = v.n_samples;
  r.n_valid = v.valid.size();
  r.validity = v.fraction;
  r.invalid_reasons = std::move(v.errors);
  r.no_valid = v.valid.empty();

  const auto canonical = canonical_all(v.valid, options.threads);
  r.uniqueness = uniqueness_of(canonical);
  r.novelty = novelty_of(canonical, training);

  DiversityOptions diversity = options.diversity;
  diversity.threads = options.threads;
  const Diversity d = internal_diversity(v.valid, diversity);
  r.int_div = d.value;
  r.int_div_used = d.n_used;
  r.int_div_subsampled = d.subsampled;

  r.fragmented_pct = fragmented_pct(v.valid);
  if (constraint)
    r.match_constraint = share(satisfied_all(v.valid, *constraint, options.threads));

  if (options.filter) {
    std::vector<bool> pass;
    for (const MolGraph &g: v.valid)
      pass.push_back(moses_filter(g, options.max_ring_size) == FilterVerdict::kPass);
    r.filter_pass = share(pass);
  }

  std::vector<double> weights;
  weights.reserve(v.valid.size());
  for (const MolGraph &g: v.valid)
    weights.push_back(mol_weight(g));
  const MeanStd mw = mean_std(weights);
  r.mol_weight_mean = mw.mean;
  r.mol_weight_std = mw.std;
  return r;
}

std::string format_mean_std(const MeanStd &value, int precision) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.*f \xC2\xB1 %.*f", precision, value.mean, precision, value.std);
  return buf;
}

RunSummary summarize(std::string representation, std::string model,
                     std::vector<MetricsReport> runs) {
  RunSummary s;
  s.representation = std::move(representation);
  s.model = std::move(model);
  s.runs = std::move(runs);
  auto column = [&](auto field) {
    std::vector<double> values;
    for (const MetricsReport &r: s.runs)
      values.push_back(field(r));
    return mean_std(values);
  };
  s.validity = column([](const MetricsReport &r) { return r.validity; });
  s.uniqueness = column([](const MetricsReport &r) { return r.uniqueness; });
  s.novelty = column([](const MetricsReport &r) { return r.novelty; });
  s.int_div = column([](const MetricsReport &r) { return r.int_div; });
  s.fragmented_pct = column([](const MetricsReport &r) { return r.fragmented_pct; });
  const bool all_matched = !s.runs.empty()
      && std::all_of(s.runs.begin(), s.runs.end(),
                     [](const MetricsReport &r) { return r.match_constraint.has_value(); });
  if (all_matched)
    s.match_constraint = column([](const MetricsReport &r) { return *r.match_constraint; });
  return s;
}

std::string csv_header() {
  return "Representation,Model,Validity,Uniqueness,Novelty,Int.Div,Fragmented";
}

std::string csv_row(const RunSummary &s) {
  std::string row = s.representation + ',' + s.model;
  for (const MeanStd *m: { &s.validity, &s.uniqueness, &s.novelty, &s.int_div, &s.fragmented_pct })
    row += ',' + format_mean_std(*m);
  return row;
}

namespace {

nlohmann::ordered_json report_json(const MetricsReport &r) {
  nlohmann::ordered_json j;
  j["n_samples"] = r.n_samples;
  j["n_valid"] = r.n_valid;
  j["validity"] = r.validity;
  j["uniqueness"] = r.uniqueness;
  j["novelty"] = r.novelty;
  j["int_div"] = r.int_div;
  j["int_div_tanimoto_power"] = 1;
  j["int_div_used"] = r.int_div_used;
  j["int_div_subsampled"] = r.int_div_subsampled;
  j["int_div_cap"] = r.int_div_cap;
  j["int_div_seed"] = r.int_div_seed;
  j["fragmented"] = r.fragmented_pct;
  j["match_constraint"] = r.match_constraint ? nlohmann::ordered_json(*r.match_constraint) : nullptr;
  j["filter_pass"] = r.filter_pass ? nlohmann::ordered_json(*r.filter_pass) : nullptr;
  j["max_ring_size"] = r.max_ring_size;
  j["mol_weight_mean"] = r.mol_weight_mean;
  j["mol_weight_std"] = r.mol_weight_std;
  j["empty_input"] = r.empty_input;
  j["no_valid"] = r.no_valid;
  j["invalid_reasons"] = r.invalid_reasons;
  return j;
}

nlohmann::ordered_json mean_std_json(const MeanStd &m) {
  return { { "mean", m.mean }, { "std", m.std } };
}

}  // namespace

std::string to_json(const MetricsReport &report, int indent) {
  return report_json(report).dump(indent);
}

std::string to_json(const RunSummary &s, int indent) {
  nlohmann::ordered_json j;
  j["representation"] = s.representation;
  j["model"] = s.model;
  j["validity"] = mean_std_json(s.validity);
  j["uniqueness"] = mean_std_json(s.uniqueness);
  j["novelty"] = mean_std_json(s.novelty);
  j["int_div"] = mean_std_json(s.int_div);
  j["fragmented"] = mean_std_json(s.fragmented_pct);
  j["match_constraint"] = s.match_constraint ? mean_std_json(*s.match_constraint) : nullptr;
  j["runs"] = nlohmann::ordered_json::array();
  for (const MetricsReport &r: s.runs)
    j["runs"].push_back(report_json(r));
  return j.dump(indent);
}

}  // namespace safekit
