//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_TOOLS_CONFIG_HPP_
#define SAFEKIT_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace safebench {

// Bad flags, bad config file, or a run directory already in use. Exit code 1.
class ConfigError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::string> inputs;
  std::string training;
  std::string constraints;
  std::string model;
  std::string rules;
  std::string output_dir = "safebench_runs";

  std::string scheme = "BRICS";
  std::string notation = "safe";
  std::string order = "canonical";
  std::uint64_t seed = 0;
  std::uint32_t augment = 5;
  bool verify = true;

  std::uint32_t ngram_order = 6;
  double discount = 0.75;

  double temperature = 1.0;
  std::uint32_t max_tokens = 256;
  std::vector<std::uint64_t> seeds { 0, 1, 2, 3, 4 };
  std::size_t samples_per_seed = 10000;
  std::size_t samples_per_constraint = 5000;

  std::string representation;
  std::string model_name = "ngram";
  std::size_t int_div_cap = 10000;
  std::uint32_t max_ring_size = 8;
  unsigned threads = 0;
};

// Fields present in `j` replace those in `config`. Unknown keys and type
// mismatches throw ConfigError.
void apply_json(RunConfig &config, const nlohmann::json &j);
nlohmann::ordered_json to_json(const RunConfig &config);

// Reads a JSON config file into `config`.
void apply_file(RunConfig &config, const std::filesystem::path &path);

// Checks enumerated fields and ranges; throws ConfigError.
void validate(const RunConfig &config);

// output_dir, resolved against $SAFEKIT_OUTPUT_ROOT when relative.
std::filesystem::path output_root(const RunConfig &config);

}  // namespace safebench

#endif  // SAFEKIT_TOOLS_CONFIG_HPP_
