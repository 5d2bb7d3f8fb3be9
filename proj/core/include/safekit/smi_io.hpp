//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_SMI_IO_HPP_
#define SAFEKIT_SMI_IO_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace safekit {

// Lines with trailing whitespace and '\r' stripped. Blank lines are dropped
// unless keep_blank is set. Throws kIo when the file cannot be read.
std::vector<std::string> read_lines(const std::filesystem::path &path, bool keep_blank = false);

// First whitespace-separated field of every non-blank line; trailing ID
// columns are ignored, as is a leading "smiles" header.
std::vector<std::string> read_smiles_file(const std::filesystem::path &path);

// One entry per line, '\n' terminated. Throws kIo on failure.
void write_lines(const std::filesystem::path &path, std::span<const std::string> lines);

}  // namespace safekit

#endif  // SAFEKIT_SMI_IO_HPP_
