//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <unordered_set>

#include "safekit/error.hpp"
#include "safekit/fragmenter.hpp"
#include "safekit/generation.hpp"
#include "safekit/metrics.hpp"
#include "safekit/ngram.hpp"
#include "safekit/parallel.hpp"
#include "safekit/patterns.hpp"
#include "safekit/random.hpp"
#include "safekit/safe.hpp"
#include "safekit/smi_io.hpp"
#include "safekit/smiles.hpp"
#include "safekit/tokenizer.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace safebench {

RunDirectory::RunDirectory(fs::path dir): dir_(std::move(dir)), lock_(dir_ / "run.lock") {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec)
    throw ConfigError("cannot create output directory " + dir_.string() + ": " + ec.message());
  std::FILE *f = std::fopen(lock_.c_str(), "wx");
  if (!f)
    throw ConfigError("run directory " + dir_.string() + " is locked (remove run.lock if stale)");
  std::fclose(f);
}

RunDirectory::~RunDirectory() {
  std::error_code ec;
  fs::remove(lock_, ec);
}

void RunDirectory::write_config(const std::string &name, const RunConfig &config) const {
  std::ofstream out(dir_ / (name + ".config.json"), std::ios::binary);
  out << to_json(config).dump(2) << '\n';
  if (!out)
    throw safekit::Error(safekit::ErrorKind::kIo, "cannot write config for " + name);
}

namespace {

void write_json(const fs::path &path, const json &j) {
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << '\n';
  if (!out)
    throw safekit::Error(safekit::ErrorKind::kIo, "cannot write " + path.string());
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out)
    throw safekit::Error(safekit::ErrorKind::kIo, "cannot write " + path.string());
}

const std::string &single_input(const RunConfig &config) {
  if (config.inputs.size() != 1)
    throw ConfigError("expected exactly one input file");
  return config.inputs.front();
}

safekit::FragmentationScheme scheme_of(const RunConfig &config) {
  return *safekit::scheme_from_name(config.scheme);
}

class Rules {
public:
  explicit Rules(const RunConfig &config) {
    if (!config.rules.empty())
      custom_ = safekit::RuleTable::load(config.rules);
  }
  const safekit::RuleTable &table() const {
    return custom_ ? *custom_ : safekit::RuleTable::defaults();
  }

private:
  std::optional<safekit::RuleTable> custom_;
};

struct Conversion {
  std::string text;
  std::string reason;
};

Conversion convert_one(const std::string &smiles, safekit::FragmentationScheme scheme,
                       safekit::BlockOrder order, std::uint64_t seed,
                       const safekit::RuleTable &table, bool verify) {
  Conversion out;
  try {
    const safekit::MolGraph g = safekit::parse_smiles(smiles);
    const safekit::SafeString s = safekit::encode(g, scheme, order, seed, table);
    if (verify && !safekit::is_isomorphic(safekit::decode(s), g)) {
      out.reason = "RoundTripMismatch";
      return out;
    }
    out.text = s.text();
  } catch (const safekit::Error &e) {
    out.reason = std::string(safekit::error_kind_name(e.kind()));
  }
  return out;
}

json discard_entry(std::size_t line, const std::string &input, const std::string &reason) {
  return { { "line", line }, { "input", input }, { "reason", reason } };
}

fs::path default_model_path(const RunConfig &config) {
  return config.model.empty() ? output_root(config) / "model.ngram" : fs::path(config.model);
}

safekit::NGramModel load_model(const RunConfig &config) {
  const fs::path path = default_model_path(config);
  if (!fs::exists(path))
    throw DataError("model file " + path.string() + " does not exist");
  return safekit::NGramModel::load(path);
}

std::unordered_set<std::string> training_set(const RunConfig &config) {
  if (config.training.empty())
    return {};
  return safekit::canonical_set(safekit::read_smiles_file(config.training), config.threads);
}

safekit::ReportOptions report_options(const RunConfig &config) {
  safekit::ReportOptions options;
  options.diversity.sample_cap = config.int_div_cap;
  options.diversity.seed = config.seed;
  options.max_ring_size = config.max_ring_size;
  options.threads = config.threads;
  return options;
}

safekit::SamplerConfig sampler(const RunConfig &config, std::uint64_t seed) {
  safekit::SamplerConfig c;
  c.temperature = config.temperature;
  c.max_tokens = config.max_tokens;
  c.seed = seed;
  return c;
}

std::string representation(const RunConfig &config) {
  if (!config.representation.empty())
    return config.representation;
  return config.notation == "safe" ? "SAFE" : "SMILES";
}

json parsed_report(const safekit::MetricsReport &r) {
  return json::parse(safekit::to_json(r));
}

}  // namespace

void cmd_convert(const RunConfig &config) {
  const fs::path input = single_input(config);
  const auto smiles = safekit::read_smiles_file(input);
  const Rules rules(config);
  const auto scheme = scheme_of(config);
  const auto order = config.order == "randomized" ? safekit::BlockOrder::kRandomized
                                                  : safekit::BlockOrder::kCanonical;

  std::vector<Conversion> results(smiles.size());
  safekit::parallel_for(smiles.size(), config.threads, [&](std::size_t i) {
    results[i] = convert_one(smiles[i], scheme, order, safekit::derive_seed(config.seed, i),
                             rules.table(), config.verify);
  });

  RunDirectory run(output_root(config));
  run.write_config("convert", config);
  const std::string stem = input.stem().string();
  std::vector<std::string> lines;
  json discards = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].reason.empty())
      lines.push_back(results[i].text);
    else
      discards.push_back(discard_entry(i + 1, smiles[i], results[i].reason));
  }
  const fs::path out = run.path() / (stem + ".safe");
  safekit::write_lines(out, lines);

  json manifest;
  manifest["command"] = "convert";
  manifest["input"] = input.string();
  manifest["output"] = out.filename().string();
  manifest["scheme"] = std::string(safekit::scheme_name(scheme));
  manifest["order"] = config.order;
  manifest["seed"] = config.seed;
  manifest["verify"] = config.verify;
  manifest["n_input"] = smiles.size();
  manifest["n_output"] = lines.size();
  manifest["n_discarded"] = discards.size();
  manifest["discards"] = discards;
  write_json(run.path() / (stem + ".manifest.json"), manifest);
  std::cerr << "convert: " << lines.size() << " written, " << discards.size() << " discarded\n";
}

void cmd_augment(const RunConfig &config) {
  const fs::path input = single_input(config);
  const auto smiles = safekit::read_smiles_file(input);
  const Rules rules(config);
  const auto scheme = scheme_of(config);
  const std::uint32_t k = config.augment;

  // Variant j of molecule i uses derive_seed(seed + j, i), so variant 0
  // matches a randomized convert with the same seed.
  std::vector<std::vector<Conversion>> results(smiles.size());
  safekit::parallel_for(smiles.size(), config.threads, [&](std::size_t i) {
    results[i].resize(k);
    for (std::uint32_t j = 0; j < k; ++j) {
      results[i][j] = convert_one(smiles[i], scheme, safekit::BlockOrder::kRandomized,
                                  safekit::derive_seed(config.seed + j, i), rules.table(),
                                  config.verify);
      if (!results[i][j].reason.empty())
        break;
    }
  });

  RunDirectory run(output_root(config));
  run.write_config("augment", config);
  const std::string stem = input.stem().string() + ".aug" + std::to_string(k);
  std::vector<std::string> lines;
  json discards = json::array();
  std::size_t duplicates = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto failed = std::find_if(results[i].begin(), results[i].end(),
                                     [](const Conversion &c) { return !c.reason.empty(); });
    if (failed != results[i].end()) {
      discards.push_back(discard_entry(i + 1, smiles[i], failed->reason));
      continue;
    }
    std::vector<std::string> seen;
    for (const Conversion &c: results[i]) {
      if (std::find(seen.begin(), seen.end(), c.text) != seen.end()) {
        ++duplicates;
        continue;
      }
      seen.push_back(c.text);
      lines.push_back(c.text);
    }
  }
  const fs::path out = run.path() / (stem + ".safe");
  safekit::write_lines(out, lines);

  json seeds = json::array();
  for (std::uint32_t j = 0; j < k; ++j)
    seeds.push_back(config.seed + j);
  json manifest;
  manifest["command"] = "augment";
  manifest["input"] = input.string();
  manifest["output"] = out.filename().string();
  manifest["scheme"] = std::string(safekit::scheme_name(scheme));
  manifest["k"] = k;
  manifest["variant_seeds"] = seeds;
  manifest["n_input"] = smiles.size();
  manifest["n_output"] = lines.size();
  manifest["n_duplicate_variants"] = duplicates;
  manifest["n_discarded"] = discards.size();
  manifest["discards"] = discards;
  write_json(run.path() / (stem + ".manifest.json"), manifest);
  std::cerr << "augment: " << lines.size() << " written, " << discards.size()
            << " molecules discarded, " << duplicates << " duplicate variants dropped\n";
}

void cmd_train(const RunConfig &config) {
  const fs::path input = single_input(config);
  const auto raw = safekit::read_smiles_file(input);
  std::vector<std::string> lines;
  json discards = json::array();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    try {
      (void)safekit::tokenize(raw[i]);
      lines.push_back(raw[i]);
    } catch (const safekit::Error &e) {
      discards.push_back(discard_entry(i + 1, raw[i], std::string(safekit::error_kind_name(e.kind()))));
    }
  }
  if (lines.empty())
    throw DataError("training corpus " + input.string() + " has no usable lines");

  safekit::NGramConfig ngram;
  ngram.order = config.ngram_order;
  ngram.discount = config.discount;
  const auto model = safekit::NGramModel::train_text(lines, ngram);

  RunDirectory run(output_root(config));
  run.write_config("train", config);
  const fs::path model_path = default_model_path(config);
  if (model_path.has_parent_path())
    fs::create_directories(model_path.parent_path());
  model.save(model_path);
  model.vocabulary().save(model_path.string() + ".vocab");

  json contexts = json::array();
  for (std::uint32_t k = 1; k <= model.order(); ++k)
    contexts.push_back(model.context_count(k));
  json manifest;
  manifest["command"] = "train";
  manifest["input"] = input.string();
  manifest["model"] = model_path.string();
  manifest["order"] = model.order();
  manifest["discount"] = model.discount();
  manifest["vocab_size"] = model.vocabulary().size();
  manifest["contexts_per_order"] = contexts;
  manifest["n_input"] = raw.size();
  manifest["n_trained"] = lines.size();
  manifest["n_discarded"] = discards.size();
  manifest["discards"] = discards;
  write_json(run.path() / "train.manifest.json", manifest);
  std::cerr << "train: " << lines.size() << " sequences, vocabulary " << model.vocabulary().size()
            << "\n";
}

void cmd_sample(const RunConfig &config) {
  const auto model = load_model(config);
  RunDirectory run(output_root(config));
  run.write_config("sample", config);
  for (std::uint64_t seed: config.seeds) {
    const auto samples = safekit::sample_many(model, sampler(config, seed),
                                              config.samples_per_seed, config.threads);
    std::vector<std::string> lines;
    json truncated = json::array();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      lines.push_back(samples[i].text);
      if (samples[i].truncated)
        truncated.push_back(i);
    }
    const std::string name = "samples_seed" + std::to_string(seed);
    safekit::write_lines(run.path() / (name + ".txt"), lines);
    json sidecar;
    sidecar["seed"] = seed;
    sidecar["n"] = samples.size();
    sidecar["temperature"] = config.temperature;
    sidecar["max_tokens"] = config.max_tokens;
    sidecar["notation"] = config.notation;
    sidecar["n_truncated"] = truncated.size();
    sidecar["truncated"] = truncated;
    write_json(run.path() / (name + ".json"), sidecar);
    std::cerr << "sample: seed " << seed << ", " << samples.size() << " samples\n";
  }
}

namespace {

// One constraint line resolved to either a constraint or an exclusion reason.
struct ConstraintLine {
  std::string input;
  std::optional<safekit::Constraint> constraint;
  std::string reason;
};

ConstraintLine parse_constraint(const std::string &line, safekit::PromptTask task) {
  ConstraintLine out { line, std::nullopt, {} };
  try {
    if (task == safekit::PromptTask::kDecorate) {
      out.constraint = safekit::Constraint::scaffold(safekit::parse_smiles(line));
    } else {
      const auto tab = line.find('\t');
      if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
        out.reason = "MalformedLine";
        return out;
      }
      out.constraint = safekit::Constraint::linker(safekit::parse_smiles(line.substr(0, tab)),
                                                   safekit::parse_smiles(line.substr(tab + 1)));
    }
  } catch (const safekit::Error &e) {
    out.reason = std::string(safekit::error_kind_name(e.kind()));
  }
  return out;
}

void run_constrained(const RunConfig &config, safekit::PromptTask task) {
  const bool decorate = task == safekit::PromptTask::kDecorate;
  const char *name = decorate ? "decorate" : "link";
  if (config.constraints.empty())
    throw ConfigError(std::string(name) + " needs a constraints file");
  const auto lines = safekit::read_lines(config.constraints);
  const auto model = load_model(config);
  const auto training = training_set(config);

  RunDirectory run(output_root(config));
  run.write_config(name, config);
  const fs::path dir = run.path() / name;
  fs::create_directories(dir);

  json entries = json::array();
  std::string csv = "Constraint,Validity,Uniqueness,Novelty,Int.Div,Fragmented,Match\n";
  std::size_t evaluated = 0;
  for (std::size_t c = 0; c < lines.size(); ++c) {
    ConstraintLine line = parse_constraint(lines[c], task);
    json entry;
    entry["line"] = c + 1;
    entry["input"] = line.input;
    std::vector<safekit::ConstrainedSample> samples;
    if (line.constraint) {
      const auto cfg = sampler(config, safekit::derive_seed(config.seeds.front(), c));
      try {
        const auto &parts = line.constraint->parts;
        samples = decorate
            ? safekit::decorate(model, parts[0], cfg, config.samples_per_constraint, config.threads)
            : safekit::link(model, parts[0], parts[1], cfg, config.samples_per_constraint,
                            config.threads);
      } catch (const safekit::Error &e) {
        line.reason = std::string(safekit::error_kind_name(e.kind()));
      }
    }
    if (!line.reason.empty()) {
      entry["status"] = "excluded";
      entry["reason"] = line.reason;
      entries.push_back(entry);
      continue;
    }

    std::vector<std::string> texts;
    std::size_t connected = 0;
    std::size_t connected_matched = 0;
    for (const auto &s: samples) {
      texts.push_back(s.generation.text);
      if (s.valid && !s.fragmented) {
        ++connected;
        connected_matched += s.constraint_matched;
      }
    }
    const std::string stem = "constraint_" + std::to_string(c + 1);
    safekit::write_lines(dir / (stem + ".txt"), texts);
    const auto report =
        safekit::build_report(texts, training, &*line.constraint, report_options(config));
    json detail = parsed_report(report);
    detail["n_valid_connected"] = connected;
    detail["match_constraint_connected"] =
        connected ? json(static_cast<double>(connected_matched) / static_cast<double>(connected))
                  : json(nullptr);
    write_json(dir / (stem + ".json"), detail);

    entry["status"] = "evaluated";
    entry["samples"] = (fs::path(name) / (stem + ".txt")).string();
    entry["report"] = detail;
    entries.push_back(entry);
    ++evaluated;

    csv += std::to_string(c + 1);
    for (double v: { report.validity, report.uniqueness, report.novelty, report.int_div,
                     report.fragmented_pct, *report.match_constraint }) {
      char buf[32];
      std::snprintf(buf, sizeof buf, ",%.3f", v);
      csv += buf;
    }
    csv += '\n';
  }

  json summary;
  summary["command"] = name;
  summary["constraints"] = config.constraints;
  summary["samples_per_constraint"] = config.samples_per_constraint;
  summary["n_constraints"] = lines.size();
  summary["n_evaluated"] = evaluated;
  summary["n_excluded"] = lines.size() - evaluated;
  summary["entries"] = entries;
  write_json(run.path() / (std::string(name) + "_report.json"), summary);
  write_text(run.path() / (std::string(name) + "_report.csv"), csv);
  std::cerr << name << ": " << evaluated << " evaluated, " << lines.size() - evaluated
            << " excluded\n";
  if (evaluated == 0)
    throw DataError(std::string("no ") + name + " constraint could be evaluated");
}

std::vector<fs::path> sample_files(const std::vector<std::string> &inputs) {
  std::vector<fs::path> files;
  for (const std::string &in: inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto &e: fs::directory_iterator(p)) {
        const std::string n = e.path().filename().string();
        if (n.starts_with("samples_seed") && e.path().extension() == ".txt")
          found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(p)) {
      files.push_back(p);
    } else {
      throw DataError("sample file " + in + " does not exist");
    }
  }
  if (files.empty())
    throw DataError("no sample files to report on");
  return files;
}

}  // namespace

void cmd_decorate(const RunConfig &config) {
  run_constrained(config, safekit::PromptTask::kDecorate);
}

void cmd_link(const RunConfig &config) {
  run_constrained(config, safekit::PromptTask::kLink);
}

void cmd_report(const RunConfig &config) {
  const auto files = sample_files(config.inputs);
  const auto training = training_set(config);
  std::vector<safekit::MetricsReport> runs;
  for (const fs::path &f: files)
    runs.push_back(safekit::build_report(safekit::read_lines(f, true), training, nullptr,
                                         report_options(config)));
  const auto summary = safekit::summarize(representation(config), config.model_name, runs);

  RunDirectory run(output_root(config));
  run.write_config("report", config);
  const std::string row = safekit::csv_row(summary);
  write_text(run.path() / "report.csv", safekit::csv_header() + "\n" + row + "\n");
  json j = json::parse(safekit::to_json(summary));
  json names = json::array();
  for (const fs::path &f: files)
    names.push_back(f.filename().string());
  j["sample_files"] = names;
  j["training"] = config.training;
  write_json(run.path() / "report.json", j);
  std::cout << safekit::csv_header() << '\n' << row << '\n';
}

}  // namespace safebench
