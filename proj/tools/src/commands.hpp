//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_TOOLS_COMMANDS_HPP_
#define SAFEKIT_TOOLS_COMMANDS_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "config.hpp"

namespace safebench {

// Unusable inputs (missing files, empty corpora, nothing left to evaluate).
// Exit code 2, as are safekit::Error escapes.
class DataError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Owns a run directory for the lifetime of a command via a run.lock file
// created exclusively. Throws ConfigError when the lock is held.
class RunDirectory {
public:
  explicit RunDirectory(std::filesystem::path dir);
  ~RunDirectory();
  RunDirectory(const RunDirectory &) = delete;
  RunDirectory &operator=(const RunDirectory &) = delete;

  const std::filesystem::path &path() const { return dir_; }
  // Writes <name>.config.json with the resolved configuration.
  void write_config(const std::string &name, const RunConfig &config) const;

private:
  std::filesystem::path dir_;
  std::filesystem::path lock_;
};

// Each command reads inputs named by the config and writes into
// output_root(config). Errors are reported by exception.
void cmd_convert(const RunConfig &config);
void cmd_augment(const RunConfig &config);
void cmd_train(const RunConfig &config);
void cmd_sample(const RunConfig &config);
void cmd_decorate(const RunConfig &config);
void cmd_link(const RunConfig &config);
void cmd_report(const RunConfig &config);

}  // namespace safebench

#endif  // SAFEKIT_TOOLS_COMMANDS_HPP_
