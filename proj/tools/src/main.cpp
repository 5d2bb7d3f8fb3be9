//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "safekit/error.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

// Flag values; unset ones leave the file/default value in place.
struct Overrides {
  std::string config_file;
  std::vector<std::string> inputs;
  std::optional<std::string> training;
  std::optional<std::string> constraints;
  std::optional<std::string> model;
  std::optional<std::string> rules;
  std::optional<std::string> output_dir;
  std::optional<std::string> scheme;
  std::optional<std::string> notation;
  std::optional<std::string> order;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> augment;
  std::optional<bool> verify;
  std::optional<std::uint32_t> ngram_order;
  std::optional<double> discount;
  std::optional<double> temperature;
  std::optional<std::uint32_t> max_tokens;
  std::vector<std::uint64_t> seeds;
  std::optional<std::size_t> samples_per_seed;
  std::optional<std::size_t> samples_per_constraint;
  std::optional<std::string> representation;
  std::optional<std::string> model_name;
  std::optional<std::size_t> int_div_cap;
  std::optional<std::uint32_t> max_ring_size;
  std::optional<unsigned> threads;
};

template <class T>
void set_if(T &target, const std::optional<T> &value) {
  if (value)
    target = *value;
}

safebench::RunConfig resolve(const Overrides &o) {
  safebench::RunConfig c;
  if (!o.config_file.empty())
    safebench::apply_file(c, o.config_file);
  if (!o.inputs.empty())
    c.inputs = o.inputs;
  set_if(c.training, o.training);
  set_if(c.constraints, o.constraints);
  set_if(c.model, o.model);
  set_if(c.rules, o.rules);
  set_if(c.output_dir, o.output_dir);
  set_if(c.scheme, o.scheme);
  set_if(c.notation, o.notation);
  set_if(c.order, o.order);
  set_if(c.seed, o.seed);
  set_if(c.augment, o.augment);
  set_if(c.verify, o.verify);
  set_if(c.ngram_order, o.ngram_order);
  set_if(c.discount, o.discount);
  set_if(c.temperature, o.temperature);
  set_if(c.max_tokens, o.max_tokens);
  if (!o.seeds.empty())
    c.seeds = o.seeds;
  set_if(c.samples_per_seed, o.samples_per_seed);
  set_if(c.samples_per_constraint, o.samples_per_constraint);
  set_if(c.representation, o.representation);
  set_if(c.model_name, o.model_name);
  set_if(c.int_div_cap, o.int_div_cap);
  set_if(c.max_ring_size, o.max_ring_size);
  set_if(c.threads, o.threads);
  safebench::validate(c);
  return c;
}

void common_options(CLI::App *cmd, Overrides &o) {
  cmd->add_option("--config", o.config_file, "JSON config file (flags override it)");
  cmd->add_option("-o,--output", o.output_dir,
                  "Run directory (relative paths resolve under $SAFEKIT_OUTPUT_ROOT)");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

void fragment_options(CLI::App *cmd, Overrides &o) {
  cmd->add_option("--scheme", o.scheme, "HR, BRICS, RECAP, MMPA or ROTATABLE");
  cmd->add_option("--rules", o.rules, "Rule table file replacing the built-in rules");
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--verify", o.verify, "Check that every output decodes to its input");
}

void sampler_options(CLI::App *cmd, Overrides &o) {
  cmd->add_option("--model", o.model, "Model file (default <output>/model.ngram)");
  cmd->add_option("--temperature", o.temperature, "Sampling temperature (0 = greedy)");
  cmd->add_option("--max-tokens", o.max_tokens, "Token limit per sample");
  cmd->add_option("--seeds", o.seeds, "Sampling seeds");
}

void report_options(CLI::App *cmd, Overrides &o) {
  cmd->add_option("--training", o.training, "Training .smi file for novelty");
  cmd->add_option("--int-div-cap", o.int_div_cap, "Subsample cap for internal diversity");
  cmd->add_option("--max-ring-size", o.max_ring_size, "Largest ring accepted by the filter");
  cmd->add_option("--seed", o.seed, "Seed for the diversity subsample");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app { "safebench: SAFE conversion, n-gram training, sampling and evaluation" };
  app.require_subcommand(1);
  Overrides o;
  std::function<void(const safebench::RunConfig &)> action;

  auto *convert = app.add_subcommand("convert", "Convert a .smi file to SAFE");
  common_options(convert, o);
  fragment_options(convert, o);
  convert->add_option("input", o.inputs, "Input .smi file");
  convert->add_option("--order", o.order, "Block order: canonical or randomized");
  convert->callback([&] { action = safebench::cmd_convert; });

  auto *augment = app.add_subcommand("augment", "Write k randomized SAFE strings per molecule");
  common_options(augment, o);
  fragment_options(augment, o);
  augment->add_option("input", o.inputs, "Input .smi file");
  augment->add_option("-k,--augment", o.augment, "Variants per molecule");
  augment->callback([&] { action = safebench::cmd_augment; });

  auto *train = app.add_subcommand("train", "Train an n-gram model on a corpus");
  common_options(train, o);
  train->add_option("input", o.inputs, "Corpus, one string per line");
  train->add_option("--model", o.model, "Model file to write (default <output>/model.ngram)");
  train->add_option("--order", o.ngram_order, "n-gram order");
  train->add_option("--discount", o.discount, "Absolute discount in (0, 1)");
  train->callback([&] { action = safebench::cmd_train; });

  auto *sample = app.add_subcommand("sample", "Sample unconditionally, one file per seed");
  common_options(sample, o);
  sampler_options(sample, o);
  sample->add_option("-n,--samples", o.samples_per_seed, "Samples per seed");
  sample->add_option("--notation", o.notation, "safe or smiles (recorded in the sidecar)");
  sample->callback([&] { action = safebench::cmd_sample; });

  auto *decorate = app.add_subcommand("decorate", "Scaffold decoration benchmark");
  auto *link = app.add_subcommand("link", "Fragment linking benchmark");
  for (auto *cmd: { decorate, link }) {
    common_options(cmd, o);
    sampler_options(cmd, o);
    report_options(cmd, o);
    cmd->add_option("constraints", o.constraints,
                    cmd == decorate ? "Scaffolds, one SMILES with [*] per line"
                                    : "Fragment pairs, two tab-separated SMILES per line");
    cmd->add_option("-n,--samples", o.samples_per_constraint, "Samples per constraint");
  }
  decorate->callback([&] { action = safebench::cmd_decorate; });
  link->callback([&] { action = safebench::cmd_link; });

  auto *report = app.add_subcommand("report", "Metrics table over sample files");
  common_options(report, o);
  report_options(report, o);
  report->add_option("inputs", o.inputs, "Sample files or run directories");
  report->add_option("--representation", o.representation, "Representation label");
  report->add_option("--notation", o.notation, "safe or smiles (default label)");
  report->add_option("--model-name", o.model_name, "Model label");
  report->callback([&] { action = safebench::cmd_report; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    action(resolve(o));
  } catch (const safebench::ConfigError &e) {
    std::cerr << "safebench: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const safebench::DataError &e) {
    std::cerr << "safebench: data error: " << e.what() << '\n';
    return kExitData;
  } catch (const safekit::Error &e) {
    std::cerr << "safebench: data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error &e) {
    std::cerr << "safebench: data error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
