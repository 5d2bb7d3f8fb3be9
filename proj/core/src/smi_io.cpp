//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "safekit/smi_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "safekit/error.hpp"

namespace safekit {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool iequals(const std::string &a, const char *b) {
  std::string lower(a);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower == b;
}

}  // namespace

std::vector<std::string> read_lines(const std::filesystem::path &path, bool keep_blank) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && is_space(line.back()))
      line.pop_back();
    if (keep_blank || !line.empty())
      lines.push_back(std::move(line));
  }
  if (in.bad())
    throw Error(ErrorKind::kIo, "read error in " + path.string());
  return lines;
}

std::vector<std::string> read_smiles_file(const std::filesystem::path &path) {
  std::vector<std::string> out;
  for (const std::string &line: read_lines(path)) {
    auto begin = std::find_if_not(line.begin(), line.end(), is_space);
    auto end = std::find_if(begin, line.end(), is_space);
    if (begin == end)
      continue;
    std::string field(begin, end);
    if (out.empty() && iequals(field, "smiles"))
      continue;
    out.push_back(std::move(field));
  }
  return out;
}

void write_lines(const std::filesystem::path &path, std::span<const std::string> lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorKind::kIo, "cannot write " + path.string());
  for (const std::string &line: lines)
    out << line << '\n';
  out.flush();
  if (!out)
    throw Error(ErrorKind::kIo, "write error in " + path.string());
}

}  // namespace safekit
