//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "safekit/ngram.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "safekit/error.hpp"

namespace safekit {

namespace {

constexpr char kMagic[8] = { 'S', 'K', 'N', 'G', 'R', 'A', 'M', '\0' };
constexpr std::uint32_t kFormatVersion = 1;
constexpr std::uint32_t kKeyBits = 64;

std::uint32_t bits_for(std::uint32_t vocab_size) {
  return std::max<std::uint32_t>(1, std::bit_width(vocab_size - 1));
}

void check_capacity(std::uint32_t order, std::uint32_t bits) {
  if (order < 1 || order * bits > kKeyBits)
    throw Error(ErrorKind::kModelFormat, "n-gram order " + std::to_string(order)
                                             + " does not fit a 64-bit key with "
                                             + std::to_string(bits) + " bits per token");
}

template <class T>
void write_pod(std::ostream &out, const T &value) {
  out.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

template <class T>
T read_pod(std::istream &in) {
  T value {};
  in.read(reinterpret_cast<char *>(&value), sizeof(T));
  if (!in)
    throw Error(ErrorKind::kModelFormat, "truncated model file");
  return value;
}

}  // namespace

std::uint64_t NGramModel::context_key(std::span<const std::uint32_t> history,
                                      std::uint32_t length) const {
  std::uint64_t key = 0;
  for (std::size_t i = history.size() - length; i < history.size(); ++i)
    key = (key << bits_) | history[i];
  return key;
}

NGramModel NGramModel::train(std::span<const std::vector<std::uint32_t>> sequences,
                             Vocabulary vocabulary, const NGramConfig &config) {
  if (sequences.empty())
    throw Error(ErrorKind::kEmptyCorpus, "cannot train on an empty corpus");
  if (!(config.discount > 0.0 && config.discount < 1.0))
    throw Error(ErrorKind::kModelFormat, "discount must lie in (0, 1)");

  NGramModel m;
  m.vocab_ = std::move(vocabulary);
  m.order_ = config.order;
  m.discount_ = config.discount;
  m.bits_ = bits_for(m.vocab_.size());
  check_capacity(m.order_, m.bits_);

  // n-gram counts per order, keyed by the packed n tokens.
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> counts(m.order_);
  std::vector<std::uint32_t> seq;
  for (const auto &ids: sequences) {
    seq.assign(1, Vocabulary::kBos);
    seq.insert(seq.end(), ids.begin(), ids.end());
    seq.push_back(Vocabulary::kEos);
    for (std::size_t i = 1; i < seq.size(); ++i) {
      std::uint64_t key = seq[i];
      ++counts[0][key];
      for (std::uint32_t k = 2; k <= m.order_ && k - 1 <= i; ++k) {
        key |= static_cast<std::uint64_t>(seq[i - (k - 1)]) << ((k - 1) * m.bits_);
        ++counts[k - 1][key];
      }
    }
  }

  m.tables_.assign(m.order_, {});
  const std::uint64_t mask = (std::uint64_t { 1 } << m.bits_) - 1;
  for (std::uint32_t k = 1; k <= m.order_; ++k) {
    for (const auto &[key, c]: counts[k - 1]) {
      Context &ctx = m.tables_[k - 1][key >> m.bits_];
      ctx.next.emplace_back(static_cast<std::uint32_t>(key & mask), c);
    }
    counts[k - 1].clear();
  }
  m.finalize();
  return m;
}

void NGramModel::finalize() {
  for (auto &table: tables_) {
    for (auto &[key, ctx]: table) {
      std::sort(ctx.next.begin(), ctx.next.end());
      ctx.total = 0;
      for (const auto &[tok, c]: ctx.next)
        ctx.total += c;
    }
  }
}

NGramModel NGramModel::train_text(std::span<const std::string> lines,
                                  const NGramConfig &config) {
  Vocabulary vocab = Vocabulary::build(lines);
  std::vector<std::vector<std::uint32_t>> seqs;
  seqs.reserve(lines.size());
  for (const std::string &line: lines)
    seqs.push_back(vocab.encode(line));
  return train(seqs, std::move(vocab), config);
}

std::vector<double> NGramModel::distribution(std::span<const std::uint32_t> history) const {
  const auto v = vocab_.size();
  std::vector<double> p(v, 1.0 / static_cast<double>(v - 1));
  p[Vocabulary::kBos] = 0.0;
  for (std::uint32_t k = 1; k <= order_ && k - 1 <= history.size(); ++k) {
    auto it = tables_[k - 1].find(context_key(history, k - 1));
    if (it == tables_[k - 1].end())
      break;
    const Context &ctx = it->second;
    const double total = static_cast<double>(ctx.total);
    const double lambda = discount_ * static_cast<double>(ctx.next.size()) / total;
    for (double &x: p)
      x *= lambda;
    for (const auto &[tok, c]: ctx.next)
      p[tok] += (static_cast<double>(c) - discount_) / total;
  }
  return p;
}

double NGramModel::probability(std::span<const std::uint32_t> history,
                               std::uint32_t next) const {
  if (next == Vocabulary::kBos)
    return 0.0;
  double p = 1.0 / static_cast<double>(vocab_.size() - 1);
  for (std::uint32_t k = 1; k <= order_ && k - 1 <= history.size(); ++k) {
    auto it = tables_[k - 1].find(context_key(history, k - 1));
    if (it == tables_[k - 1].end())
      break;
    const Context &ctx = it->second;
    const double total = static_cast<double>(ctx.total);
    p *= discount_ * static_cast<double>(ctx.next.size()) / total;
    auto hit = std::lower_bound(ctx.next.begin(), ctx.next.end(),
                                std::make_pair(next, std::uint32_t { 0 }));
    if (hit != ctx.next.end() && hit->first == next)
      p += (static_cast<double>(hit->second) - discount_) / total;
  }
  return p;
}

double NGramModel::log_probability(std::span<const std::uint32_t> ids) const {
  std::vector<std::uint32_t> history { Vocabulary::kBos };
  history.reserve(ids.size() + 1);
  double lp = 0.0;
  for (auto id: ids) {
    lp += std::log(probability(history, id));
    history.push_back(id);
  }
  return lp + std::log(probability(history, Vocabulary::kEos));
}

double NGramModel::perplexity(std::span<const std::string> lines) const {
  double nll = 0.0;
  std::size_t tokens = 0;
  for (const std::string &line: lines) {
    const auto ids = vocab_.encode(line);
    nll -= log_probability(ids);
    tokens += ids.size() + 1;
  }
  if (tokens == 0)
    throw Error(ErrorKind::kEmptyCorpus, "perplexity needs at least one line");
  return std::exp(nll / static_cast<double>(tokens));
}

std::size_t NGramModel::context_count(std::uint32_t k) const {
  return k >= 1 && k <= order_ ? tables_[k - 1].size() : 0;
}

void NGramModel::save(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorKind::kModelFormat, "cannot write model " + path.string());
  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kFormatVersion);
  write_pod(out, order_);
  write_pod(out, discount_);
  write_pod(out, vocab_.size());
  for (const std::string &s: vocab_.surfaces()) {
    write_pod(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  for (const auto &table: tables_) {
    std::vector<std::uint64_t> keys;
    keys.reserve(table.size());
    for (const auto &[key, ctx]: table)
      keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    write_pod(out, static_cast<std::uint64_t>(keys.size()));
    for (auto key: keys) {
      const Context &ctx = table.at(key);
      write_pod(out, key);
      write_pod(out, static_cast<std::uint32_t>(ctx.next.size()));
      for (const auto &[tok, c]: ctx.next) {
        write_pod(out, tok);
        write_pod(out, c);
      }
    }
  }
  if (!out)
    throw Error(ErrorKind::kModelFormat, "failed writing model " + path.string());
}

NGramModel NGramModel::load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::kModelFormat, "cannot read model " + path.string());
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw Error(ErrorKind::kModelFormat, path.string() + " is not an n-gram model file");
  if (read_pod<std::uint32_t>(in) != kFormatVersion)
    throw Error(ErrorKind::kModelFormat, "unsupported model format version");

  NGramModel m;
  m.order_ = read_pod<std::uint32_t>(in);
  m.discount_ = read_pod<double>(in);
  const auto vsize = read_pod<std::uint32_t>(in);
  std::vector<std::string> tokens(vsize);
  for (auto &s: tokens) {
    s.resize(read_pod<std::uint32_t>(in));
    in.read(s.data(), static_cast<std::streamsize>(s.size()));
  }
  m.vocab_ = Vocabulary::from_tokens(tokens);
  if (m.vocab_.size() != vsize)
    throw Error(ErrorKind::kModelFormat, "duplicate tokens in model vocabulary");
  m.bits_ = bits_for(vsize);
  check_capacity(m.order_, m.bits_);
  m.tables_.assign(m.order_, {});
  for (auto &table: m.tables_) {
    const auto n = read_pod<std::uint64_t>(in);
    table.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto key = read_pod<std::uint64_t>(in);
      Context &ctx = table[key];
      ctx.next.resize(read_pod<std::uint32_t>(in));
      for (auto &[tok, c]: ctx.next) {
        tok = read_pod<std::uint32_t>(in);
        c = read_pod<std::uint32_t>(in);
        if (tok >= vsize)
          throw Error(ErrorKind::kModelFormat, "token id out of range");
      }
    }
  }
  m.finalize();
  return m;
}

}  // namespace safekit
