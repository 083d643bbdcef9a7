// Copyright 2026 The Coretag Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli/app.h"
#include "cli/config.h"
#include "coretag/classifier/checkpoint.h"
#include "coretag/labelgen/labels.h"
#include "coretag/util/binary_io.h"
#include "coretag/util/error.h"
#include "coretag/util/jsonl.h"
#include "oracles/test_support.h"

namespace coretag::cli {
namespace {

using coretag::testing::FixturePath;
using coretag::testing::TempDir;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "coretag");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = Run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json ErrorJson(const Result& r) {
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
  return nlohmann::json::parse(r.err);
}

TEST(CliTest, MineLabelsIsByteIdenticalAcrossRuns) {
  TempDir dir;
  const std::string corpus = FixturePath("three_docs.jsonl").string();
  const auto a = Cli({"--seed", "5", "mine-labels", "--corpus", corpus, "--out", dir.str("a.jsonl")});
  const auto b = Cli({"--seed", "5", "mine-labels", "--corpus", corpus, "--out", dir.str("b.jsonl")});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  const std::string bytes = ReadTextFile(dir / "a.jsonl");
  EXPECT_FALSE(bytes.empty());
  EXPECT_EQ(bytes, ReadTextFile(dir / "b.jsonl"));
  EXPECT_EQ(a.out, b.out);
  const auto labels = ReadLabels(dir / "a.jsonl");
  EXPECT_EQ(CountPolarity(labels, Polarity::kPositive),
            CountPolarity(labels, Polarity::kNegative));
}

TEST(CliTest, HeatIslandFixtureThroughCli) {
  TempDir dir;
  const std::string corpus = FixturePath("heat_island/corpus.jsonl").string();
  ASSERT_EQ(Cli({"--set", "labels.negatives=false", "mine-labels", "--corpus", corpus, "--out",
                 dir.str("core.jsonl")})
                .code,
            0);
  ASSERT_EQ(Cli({"--set", "labels.negatives=false", "match-gazetteer", "--corpus", corpus,
                 "--gazetteer", FixturePath("heat_island/gazetteer.txt").string(), "--out",
                 dir.str("gaz.jsonl")})
                .code,
            0);
  EXPECT_EQ(ReadTextFile(dir / "core.jsonl"),
            ReadTextFile(FixturePath("heat_island/expected_core_labels.jsonl")));
  EXPECT_EQ(ReadTextFile(dir / "gaz.jsonl"),
            ReadTextFile(FixturePath("heat_island/expected_gazetteer_labels.jsonl")));
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitUsage);
  const auto r = Cli({"mine-labels", "--no-such-flag", "x"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(ErrorJson(r)["error"], "usage");
  EXPECT_EQ(Cli({"--help"}).code, 0);
  EXPECT_EQ(Cli({"train", "--help"}).code, 0);
}

TEST(CliTest, ConfigErrors) {
  TempDir dir;
  const std::string corpus = FixturePath("three_docs.jsonl").string();
  auto r = Cli({"--set", "mining.nope=3", "mine-labels", "--corpus", corpus, "--out",
                dir.str("l.jsonl")});
  EXPECT_EQ(r.code, kExitConfig);
  const auto j = ErrorJson(r);
  EXPECT_EQ(j["exit_code"], kExitConfig);
  EXPECT_NE(j["message"].get<std::string>().find("mining.nope"), std::string::npos);
  EXPECT_EQ(Cli({"mine-labels", "--corpus", corpus, "--out", dir.str("l.jsonl"), "--k-max",
                 "many"})
                .code,
            kExitConfig);
  EXPECT_EQ(Cli({"mine-labels", "--corpus", corpus}).code, kExitConfig);
  WriteTextFile(dir / "bad.cfg", "this line has no equals sign\n");
  EXPECT_EQ(Cli({"--config", dir.str("bad.cfg"), "mine-labels", "--corpus", corpus, "--out",
                 dir.str("l.jsonl")})
                .code,
            kExitConfig);
}

TEST(CliTest, PathErrors) {
  TempDir dir;
  const auto r = Cli({"mine-labels", "--corpus", dir.str("missing.jsonl"), "--out",
                      dir.str("l.jsonl")});
  EXPECT_EQ(r.code, kExitPath);
  EXPECT_EQ(ErrorJson(r)["exit_code"], kExitPath);
  EXPECT_EQ(Cli({"--config", dir.str("missing.cfg"), "gen-synth", "--out-dir", dir.str("x")}).code,
            kExitPath);
}

TEST(CliTest, DataErrors) {
  TempDir dir;
  WriteTextFile(dir / "c.jsonl", "{broken\n");
  EXPECT_EQ(Cli({"mine-labels", "--corpus", dir.str("c.jsonl"), "--out", dir.str("l.jsonl")}).code,
            kExitData);
  // A corrupted checkpoint is a data error, not a crash.
  ModelCheckpoint c;
  c.params = ModelParams(Architecture{});
  auto bytes = EncodeCheckpoint(c);
  bytes[bytes.size() - 3] ^= 0xff;
  WriteFileBytes(dir / "m.ucpm", bytes);
  const auto r = Cli({"tag", "--corpus", FixturePath("three_docs.jsonl").string(), "--checkpoint",
                      dir.str("m.ucpm"), "--provider", "hash", "--out", dir.str("p.jsonl")});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_EQ(ErrorJson(r)["error"], "checksum");
}

TEST(CliTest, TrainWithTooFewPositivesIsPrecondition) {
  TempDir dir;
  const std::string corpus = FixturePath("three_docs.jsonl").string();
  ASSERT_EQ(Cli({"mine-labels", "--corpus", corpus, "--out", dir.str("l.jsonl")}).code, 0);
  const auto r = Cli({"train", "--corpus", corpus, "--labels", dir.str("l.jsonl"), "--provider",
                      "hash", "--out", dir.str("m.ucpm")});
  EXPECT_EQ(r.code, kExitPrecondition);
  const auto j = ErrorJson(r);
  EXPECT_NE(j["message"].get<std::string>().find("at least 10 positive"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(dir / "m.ucpm"));
}

TEST(CliTest, ExitCodesAreDistinct) {
  std::set<int> codes = {kExitOk,   kExitInternal, kExitUsage,        kExitConfig,
                         kExitPath, kExitData,     kExitPrecondition, kExitNumeric};
  EXPECT_EQ(codes.size(), 8u);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kConfig), kExitConfig);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kIo), kExitPath);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kChecksum), kExitData);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kFailedPrecondition), kExitPrecondition);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kNumeric), kExitNumeric);
}

TEST(CliTest, DryRunResolvesPrecedenceAndWritesNothing) {
  TempDir dir;
  WriteTextFile(dir / "run.cfg",
                "# pipeline\nseed = 11\nmining.min_freq = 4\nmining.k_max = 5\n");
  const auto r = Cli({"--config", dir.str("run.cfg"), "--set", "mining.k_max=3", "--dry-run",
                      "mine-labels", "--corpus", FixturePath("three_docs.jsonl").string(),
                      "--out", dir.str("l.jsonl"), "--min-freq", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dry_run"], true);
  EXPECT_EQ(j["config"]["seed"], 11);
  EXPECT_EQ(j["config"]["mining.min_freq"], 3);
  EXPECT_EQ(j["config"]["mining.k_max"], 3);
  EXPECT_FALSE(std::filesystem::exists(dir / "l.jsonl"));

  const auto s = Cli({"--config", dir.str("run.cfg"), "--seed", "2", "--dry-run", "gen-synth",
                      "--out-dir", dir.str("x")});
  EXPECT_EQ(nlohmann::json::parse(s.out)["config"]["seed"], 2);
}

TEST(CliTest, ThreadsEnvironmentFallback) {
  TempDir dir;
  ::setenv("UCP_THREADS", "zero", 1);
  const auto bad = Cli({"--dry-run", "gen-synth", "--out-dir", dir.str("x")});
  ::setenv("UCP_THREADS", "2", 1);
  const auto good = Cli({"--dry-run", "gen-synth", "--out-dir", dir.str("x")});
  ::unsetenv("UCP_THREADS");
  EXPECT_EQ(bad.code, kExitConfig);
  EXPECT_EQ(good.code, 0);
}

TEST(CliTest, ReportEmbedsConfig) {
  TempDir dir;
  const auto r = Cli({"--seed", "3", "gen-synth", "--out-dir", dir.str("syn"), "--n-docs", "5",
                      "--report", dir.str("report.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = nlohmann::json::parse(r.out);
  EXPECT_EQ(summary["command"], "gen-synth");
  EXPECT_FALSE(summary.contains("config"));
  const auto report = nlohmann::json::parse(ReadTextFile(dir / "report.json"));
  EXPECT_EQ(report["config"]["seed"], 3);
  EXPECT_EQ(report["config"]["synth.n_docs"], 5);
  EXPECT_EQ(report["counts"]["documents"], 5);
  for (const char* f : {"corpus.jsonl", "gold_spans.jsonl", "gold_keyphrases.jsonl",
                        "planted.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / "syn" / f)) << f;
  }
}

TEST(CliTest, SmallPipelineRuns) {
  TempDir dir;
  auto p = [&](const char* name) { return dir.str(name); };
  ASSERT_EQ(Cli({"--seed", "1", "gen-synth", "--out-dir", p("syn"), "--n-docs", "40",
                 "--holdout", "8"})
                .code,
            0);
  const std::string corpus = (dir / "syn" / "corpus.jsonl").string();
  const std::string held = (dir / "syn" / "heldout_corpus.jsonl").string();
  const std::string planted = (dir / "syn" / "planted.json").string();
  ASSERT_EQ(Cli({"mine-labels", "--corpus", corpus, "--out", p("labels.jsonl")}).code, 0);
  ASSERT_EQ(Cli({"extract-features", "--corpus", corpus, "--planted", planted, "--out",
                 p("train.ucat")})
                .code,
            0);
  auto r = Cli({"--seed", "1", "train", "--corpus", corpus, "--labels", p("labels.jsonl"),
                "--archive", p("train.ucat"), "--out", p("m.ucpm"), "--max-epochs", "3",
                "--train-report", p("epochs.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(std::filesystem::file_size(dir / "m.ucpm"), 256u * 1024u);
  std::size_t epochs = 0;
  ForEachLine(dir / "epochs.jsonl", [&](std::size_t, std::string_view) { ++epochs; });
  EXPECT_GE(epochs, 1u);
  EXPECT_LE(epochs, 3u);
  ASSERT_EQ(Cli({"tag", "--corpus", held, "--planted", planted, "--checkpoint", p("m.ucpm"),
                 "--out", p("pred.jsonl")})
                .code,
            0);
  r = Cli({"eval-tagging", "--predictions", p("pred.jsonl"), "--gold",
           (dir / "syn" / "heldout_gold_spans.jsonl").string(), "--report", p("tag.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto tag = nlohmann::json::parse(ReadTextFile(dir / "tag.json"));
  EXPECT_EQ(tag["task"], "tagging");
  EXPECT_TRUE(tag["metrics"].contains("f1"));
  r = Cli({"eval-kp", "--corpus", held, "--predictions", p("pred.jsonl"), "--gold",
           (dir / "syn" / "heldout_gold_keyphrases.jsonl").string(), "--report", p("kp.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto kp = nlohmann::json::parse(ReadTextFile(dir / "kp.json"));
  EXPECT_TRUE(kp["metrics"].contains("recall"));
  EXPECT_TRUE(kp["metrics"].contains("f1_at_10"));
  ASSERT_EQ(Cli({"rank", "--corpus", held, "--predictions", p("pred.jsonl"), "--out",
                 p("rank.jsonl")})
                .code,
            0);
  ASSERT_EQ(Cli({"sample-annotation", "--ranking", p("rank.jsonl"), "--out", p("sample.txt"),
                 "--size", "5"})
                .code,
            0);
  WriteTextFile(dir / "ann.tsv", "");
  r = Cli({"rank", "--corpus", held, "--predictions", p("pred.jsonl"), "--out", p("rank2.jsonl"),
           "--annotations", p("ann.tsv"), "--ks", "1,2", "--report", p("rank.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rank = nlohmann::json::parse(ReadTextFile(dir / "rank.json"));
  EXPECT_EQ(rank["config"]["eval.ks"], "1,2");
}

TEST(PipelineConfigTest, TypedAccessors) {
  PipelineConfig c;
  EXPECT_EQ(c.Count("mining.k_max"), 6u);
  EXPECT_EQ(c.Real("train.learning_rate"), 0.001);
  EXPECT_FALSE(c.IsSet("seed"));
  c.Set("seed", "42");
  EXPECT_TRUE(c.IsSet("seed"));
  EXPECT_EQ(c.Uint("seed"), 42u);
  c.MergeText("eval.stem = true\neval.ks = 5, 10\n", "inline");
  EXPECT_TRUE(c.Bool("eval.stem"));
  EXPECT_EQ(c.CountList("eval.ks"), (std::vector<std::size_t>{5, 10}));
  EXPECT_THROW(c.Set("train.batch_size", "three"), Error);
  EXPECT_THROW(c.Set("eval.stem", "maybe"), Error);
  EXPECT_THROW(c.Set("unknown.key", "1"), Error);
}

}  // namespace
}  // namespace coretag::cli
