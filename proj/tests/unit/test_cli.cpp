//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "config.hpp"
#include "safekit/safe.hpp"
#include "safekit/smiles.hpp"
#include "test_support.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return { std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>() };
}

std::vector<std::string> lines_of(const fs::path &p) {
  std::vector<std::string> out;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);)
    out.push_back(line);
  return out;
}

void write(const fs::path &p, const std::string &text) {
  std::ofstream(p, std::ios::binary) << text;
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / "safekit_test_cli" / info->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  // Runs the binary inside the test directory and returns its exit status.
  int run(const std::string &args, const std::string &env = "") const {
    const std::string cmd = "cd '" + dir_.string() + "' && " + env + " '" SAFEBENCH_BINARY "' "
                            + args + " >stdout.txt 2>stderr.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path path(const std::string &rel) const { return dir_ / rel; }

  void write_corpus(const std::string &name, std::size_t n) const {
    std::string text;
    for (const auto &s: safekit::testing::moses_train(n))
      text += s + "\n";
    write(path(name), text);
  }

  fs::path dir_;
};

TEST_F(Cli, ConvertDiscardsBadLines) {
  write(path("in.smi"), "CCO\nC(\nc1ccccc1C(=O)NC\n");
  ASSERT_EQ(run("convert in.smi -o out --threads 2"), 0);
  const auto out = lines_of(path("out/in.safe"));
  ASSERT_EQ(out.size(), 2U);
  EXPECT_EQ(safekit::canonical_smiles(safekit::decode(out[0])),
            safekit::canonical_smiles(safekit::parse_smiles("CCO")));
  const json manifest = json::parse(slurp(path("out/in.manifest.json")));
  EXPECT_EQ(manifest["n_discarded"], 1);
  EXPECT_EQ(manifest["discards"][0]["line"], 2);
  EXPECT_EQ(manifest["discards"][0]["reason"], "SyntaxError");
  EXPECT_TRUE(fs::exists(path("out/convert.config.json")));
  EXPECT_FALSE(fs::exists(path("out/run.lock")));
}

TEST_F(Cli, ConvertIsIdempotent) {
  write_corpus("in.smi", 300);
  ASSERT_EQ(run("convert in.smi -o a --order randomized --seed 3"), 0);
  ASSERT_EQ(run("convert in.smi -o b --order randomized --seed 3 --threads 1"), 0);
  EXPECT_EQ(slurp(path("a/in.safe")), slurp(path("b/in.safe")));
  EXPECT_EQ(lines_of(path("a/in.safe")).size(), 300U);
}

TEST_F(Cli, AugmentOneMatchesRandomizedConvert) {
  write_corpus("in.smi", 200);
  ASSERT_EQ(run("convert in.smi -o c --order randomized --seed 9"), 0);
  ASSERT_EQ(run("augment in.smi -o a -k 1 --seed 9"), 0);
  EXPECT_EQ(slurp(path("a/in.aug1.safe")), slurp(path("c/in.safe")));
  ASSERT_EQ(run("augment in.smi -o a -k 5 --seed 9"), 0);
  const auto five = lines_of(path("a/in.aug5.safe"));
  EXPECT_LE(five.size(), 5U * 200U);
  EXPECT_GT(five.size(), 200U);
  for (std::size_t i = 0; i < five.size(); i += 37)
    EXPECT_NO_THROW(safekit::decode(five[i]));
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("--no-such-flag"), 1);
  EXPECT_EQ(run("convert in.smi --scheme NOPE"), 1);
  EXPECT_EQ(run("convert missing.smi -o out"), 2);
  write(path("cfg.json"), "{\"unknown_key\": 1}");
  EXPECT_EQ(run("convert x.smi --config cfg.json"), 1);
  write(path("bad.smi"), "C(\n");
  fs::create_directories(path("locked"));
  write(path("locked/run.lock"), "");
  write(path("in.smi"), "CCO\n");
  EXPECT_EQ(run("convert in.smi -o locked"), 1);
  EXPECT_TRUE(fs::exists(path("locked/run.lock")));
}

TEST_F(Cli, TrainSampleReport) {
  write_corpus("in.smi", 500);
  ASSERT_EQ(run("convert in.smi -o run"), 0);
  ASSERT_EQ(run("train run/in.safe -o run --order 4"), 0);
  ASSERT_TRUE(fs::exists(path("run/model.ngram")));
  ASSERT_EQ(run("sample -o run -n 40 --seeds 0 1 2 3 4"), 0);
  for (int s = 0; s < 5; ++s) {
    EXPECT_EQ(lines_of(path("run/samples_seed" + std::to_string(s) + ".txt")).size(), 40U);
    EXPECT_TRUE(fs::exists(path("run/samples_seed" + std::to_string(s) + ".json")));
  }
  ASSERT_EQ(run("report run -o rep1 --training in.smi"), 0);
  ASSERT_EQ(run("report run -o rep2 --training in.smi --threads 1"), 0);
  EXPECT_EQ(slurp(path("rep1/report.csv")), slurp(path("rep2/report.csv")));
  EXPECT_EQ(slurp(path("rep1/report.json")), slurp(path("rep2/report.json")));
  EXPECT_EQ(slurp(path("stdout.txt")), slurp(path("rep1/report.csv")));

  // One seed gives a zero spread.
  ASSERT_EQ(run("report run/samples_seed0.txt -o rep3"), 0);
  const auto csv = lines_of(path("rep3/report.csv"));
  ASSERT_EQ(csv.size(), 2U);
  EXPECT_NE(csv[1].find("± 0.000"), std::string::npos);
  const json j = json::parse(slurp(path("rep3/report.json")));
  EXPECT_EQ(j["runs"].size(), 1U);
}

TEST_F(Cli, GreedySampleReproducesSingleStringCorpus) {
  write(path("one.txt"), "CC1.O1\n");
  ASSERT_EQ(run("train one.txt -o run --order 3"), 0);
  ASSERT_EQ(run("sample -o run -n 1 --seeds 0 --temperature 0"), 0);
  EXPECT_EQ(lines_of(path("run/samples_seed0.txt")), std::vector<std::string> { "CC1.O1" });
}

TEST_F(Cli, DecorateAndLink) {
  write_corpus("in.smi", 500);
  ASSERT_EQ(run("convert in.smi -o run"), 0);
  ASSERT_EQ(run("train run/in.safe -o run"), 0);
  write(path("scaffolds.smi"), std::string(safekit::testing::kBaricitinibScaffold) + "\nCC\n");
  ASSERT_EQ(run("decorate scaffolds.smi -o run -n 20"), 0);
  const json d = json::parse(slurp(path("run/decorate_report.json")));
  ASSERT_EQ(d["entries"].size(), 2U);
  EXPECT_EQ(d["entries"][0]["status"], "evaluated");
  EXPECT_EQ(d["entries"][1]["status"], "excluded");
  EXPECT_EQ(d["entries"][1]["reason"], "NoAttachmentPoints");
  EXPECT_EQ(lines_of(path("run/decorate/constraint_1.txt")).size(), 20U);

  write(path("pairs.tsv"), "[*]C\t[*]c1ccccc1\nnot a pair\n");
  ASSERT_EQ(run("link pairs.tsv -o run -n 10"), 0);
  const json l = json::parse(slurp(path("run/link_report.json")));
  EXPECT_EQ(l["entries"][1]["reason"], "MalformedLine");

  write(path("allbad.smi"), "CC\n");
  EXPECT_EQ(run("decorate allbad.smi -o run -n 5"), 2);
}

TEST_F(Cli, ConfigPrecedenceAndOutputRoot) {
  write(path("in.smi"), "CCOc1ccccc1\n");
  write(path("cfg.json"), "{\"scheme\": \"HR\", \"output_dir\": \"fromcfg\"}");
  ASSERT_EQ(run("convert in.smi --config cfg.json"), 0);
  EXPECT_EQ(json::parse(slurp(path("fromcfg/in.manifest.json")))["scheme"], "HR");
  ASSERT_EQ(run("convert in.smi --config cfg.json --scheme RECAP -o flag"), 0);
  EXPECT_EQ(json::parse(slurp(path("flag/in.manifest.json")))["scheme"], "RECAP");
  fs::create_directories(path("root"));
  ASSERT_EQ(run("convert in.smi -o rel", "SAFEKIT_OUTPUT_ROOT='" + path("root").string() + "'"), 0);
  EXPECT_TRUE(fs::exists(path("root/rel/in.safe")));
}

TEST(Config, ApplyJsonRejectsTypes) {
  safebench::RunConfig c;
  EXPECT_THROW(safebench::apply_json(c, json::parse("{\"seed\": \"x\"}")), safebench::ConfigError);
  safebench::apply_json(c, json::parse("{\"seed\": 4, \"seeds\": [1, 2]}"));
  EXPECT_EQ(c.seed, 4U);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t> { 1, 2 }));
  c.discount = 1.5;
  EXPECT_THROW(safebench::validate(c), safebench::ConfigError);
}

}  // namespace
