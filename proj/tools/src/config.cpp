//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>

#include "safekit/fragmenter.hpp"

namespace safebench {

namespace {

template <class T>
std::function<void(const nlohmann::json &)> field(T &target, const char *key) {
  return [&target, key](const nlohmann::json &value) {
    try {
      target = value.get<T>();
    } catch (const nlohmann::json::exception &) {
      throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
  };
}

}  // namespace

void apply_json(RunConfig &c, const nlohmann::json &j) {
  if (!j.is_object())
    throw ConfigError("config must be a JSON object");
  const std::map<std::string, std::function<void(const nlohmann::json &)>> fields {
    { "inputs", field(c.inputs, "inputs") },
    { "training", field(c.training, "training") },
    { "constraints", field(c.constraints, "constraints") },
    { "model", field(c.model, "model") },
    { "rules", field(c.rules, "rules") },
    { "output_dir", field(c.output_dir, "output_dir") },
    { "scheme", field(c.scheme, "scheme") },
    { "notation", field(c.notation, "notation") },
    { "order", field(c.order, "order") },
    { "seed", field(c.seed, "seed") },
    { "augment", field(c.augment, "augment") },
    { "verify", field(c.verify, "verify") },
    { "ngram_order", field(c.ngram_order, "ngram_order") },
    { "discount", field(c.discount, "discount") },
    { "temperature", field(c.temperature, "temperature") },
    { "max_tokens", field(c.max_tokens, "max_tokens") },
    { "seeds", field(c.seeds, "seeds") },
    { "samples_per_seed", field(c.samples_per_seed, "samples_per_seed") },
    { "samples_per_constraint", field(c.samples_per_constraint, "samples_per_constraint") },
    { "representation", field(c.representation, "representation") },
    { "model_name", field(c.model_name, "model_name") },
    { "int_div_cap", field(c.int_div_cap, "int_div_cap") },
    { "max_ring_size", field(c.max_ring_size, "max_ring_size") },
    { "threads", field(c.threads, "threads") },
  };
  for (const auto &[key, value]: j.items()) {
    auto it = fields.find(key);
    if (it == fields.end())
      throw ConfigError("unknown config key '" + key + "'");
    it->second(value);
  }
}

nlohmann::ordered_json to_json(const RunConfig &c) {
  nlohmann::ordered_json j;
  j["inputs"] = c.inputs;
  j["training"] = c.training;
  j["constraints"] = c.constraints;
  j["model"] = c.model;
  j["rules"] = c.rules;
  j["output_dir"] = c.output_dir;
  j["scheme"] = c.scheme;
  j["notation"] = c.notation;
  j["order"] = c.order;
  j["seed"] = c.seed;
  j["augment"] = c.augment;
  j["verify"] = c.verify;
  j["ngram_order"] = c.ngram_order;
  j["discount"] = c.discount;
  j["temperature"] = c.temperature;
  j["max_tokens"] = c.max_tokens;
  j["seeds"] = c.seeds;
  j["samples_per_seed"] = c.samples_per_seed;
  j["samples_per_constraint"] = c.samples_per_constraint;
  j["representation"] = c.representation;
  j["model_name"] = c.model_name;
  j["int_div_cap"] = c.int_div_cap;
  j["max_ring_size"] = c.max_ring_size;
  j["threads"] = c.threads;
  return j;
}

void apply_file(RunConfig &config, const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read config file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  apply_json(config, j);
}

void validate(const RunConfig &c) {
  if (!safekit::scheme_from_name(c.scheme))
    throw ConfigError("unknown scheme '" + c.scheme + "'");
  if (c.notation != "safe" && c.notation != "smiles")
    throw ConfigError("notation must be 'safe' or 'smiles'");
  if (c.order != "canonical" && c.order != "randomized")
    throw ConfigError("order must be 'canonical' or 'randomized'");
  if (c.ngram_order < 1)
    throw ConfigError("ngram_order must be at least 1");
  if (!(c.discount > 0.0 && c.discount < 1.0))
    throw ConfigError("discount must lie in (0, 1)");
  if (c.temperature < 0.0)
    throw ConfigError("temperature must be non-negative");
  if (c.seeds.empty())
    throw ConfigError("seeds must not be empty");
  if (c.augment < 1)
    throw ConfigError("augment must be at least 1");
  if (c.output_dir.empty())
    throw ConfigError("output_dir must not be empty");
}

std::filesystem::path output_root(const RunConfig &config) {
  std::filesystem::path dir(config.output_dir);
  if (dir.is_relative()) {
    if (const char *root = std::getenv("SAFEKIT_OUTPUT_ROOT"); root && *root)
      dir = std::filesystem::path(root) / dir;
  }
  return dir;
}

}  // namespace safebench
