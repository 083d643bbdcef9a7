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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli/app.h"
#include "coretag/attnfeat/archive.h"
#include "coretag/attnfeat/providers.h"
#include "coretag/attnfeat/synthetic.h"
#include "coretag/classifier/checkpoint.h"
#include "coretag/classifier/model.h"
#include "coretag/classifier/trainer.h"
#include "coretag/corpus/corpus.h"
#include "coretag/corpus/gold.h"
#include "coretag/corpus/stopwords.h"
#include "coretag/eval/keyphrase.h"
#include "coretag/eval/metrics.h"
#include "coretag/eval/ranking.h"
#include "coretag/labelgen/core_miner.h"
#include "coretag/labelgen/gazetteer.h"
#include "coretag/labelgen/labels.h"
#include "coretag/tagger/tagger.h"
#include "coretag/util/binary_io.h"
#include "coretag/util/error.h"
#include "coretag/util/hash.h"
#include "coretag/util/jsonl.h"
#include "coretag/util/rng.h"
#include "oracles/oracles.h"
#include "oracles/test_support.h"

namespace coretag {
namespace {

using Clock = std::chrono::steady_clock;
using SpanSet = std::set<std::tuple<std::size_t, std::size_t, std::size_t>>;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

SpanSet Spans(const LabelSet& labels) {
  SpanSet out;
  for (const auto& l : labels) out.insert({l.span.sent_idx, l.span.start, l.span.end});
  return out;
}

std::set<std::string> DefaultStopwords() {
  const auto sorted = StopwordList::Default().Sorted();
  return {sorted.begin(), sorted.end()};
}

// Returns the error code raised by `fn`, or nullopt when it returns.
std::optional<ErrorCode> CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "coretag");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::Run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// ---------------------------------------------------------------------------

Outcome CoreMinerOracle() {
  const auto stop = DefaultStopwords();
  double library_seconds = 0.0;
  std::size_t mismatches = 0;
  std::size_t spans = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Document doc = oracle::RandomDocument(1'000'000 + seed, 300);
    MiningOptions opt;
    opt.min_freq = 2;
    opt.k_max = 2 + seed % 5;
    const auto start = Clock::now();
    const LabelSet labels = MineCorePhrases(doc, opt);
    library_seconds += Seconds(start);
    const SpanSet got = Spans(labels);
    spans += got.size();
    if (got != oracle::CoreSpans(doc, 2, opt.k_max, stop)) ++mismatches;
  }
  return {mismatches == 0 && library_seconds < 10.0,
          std::to_string(1000 - mismatches) + "/1000 documents equal the oracle (" +
              std::to_string(spans) + " spans), library time " +
              Fmt("%.2f", library_seconds) + " s"};
}

Outcome MinerInvariants() {
  std::size_t violations = 0;
  std::size_t patterns_seen = 0;
  Rng rng(2024);
  for (std::uint64_t i = 0; i < 10'000; ++i) {
    const Document doc = oracle::RandomDocument(rng.Next(), 5 + rng.Below(120));
    const auto words = doc.Words();
    MiningOptions opt;
    opt.min_freq = 2 + rng.Below(3);
    opt.k_max = 2 + rng.Below(5);
    const auto patterns = MineCorePatterns(words, opt);
    patterns_seen += patterns.size();
    for (const auto& p : patterns) {
      if (p.frequency() < opt.min_freq ||
          p.frequency() != oracle::CountOccurrences(words, p.tokens) ||
          p.tokens.size() < 2 || p.tokens.size() > opt.k_max) {
        ++violations;
      }
      for (const auto& q : patterns) {
        if (&p != &q && oracle::IsSubsequence(p.tokens, q.tokens)) ++violations;
      }
    }
  }
  return {violations == 0, "10000 cases, " + std::to_string(patterns_seen) + " patterns, " +
                               std::to_string(violations) + " violations"};
}

Outcome HeatIslandFixture() {
  testing::TempDir dir;
  const auto docs = LoadCorpus(testing::FixturePath("heat_island/corpus.jsonl"));
  const auto gaz = Gazetteer::FromFile(testing::FixturePath("heat_island/gazetteer.txt"));
  WriteLabels(dir / "core.jsonl", MineCorePhrases(docs.at(0), {}));
  WriteLabels(dir / "gaz.jsonl", GazetteerMatch(docs.at(0), gaz, 6));
  const bool core = ReadTextFile(dir / "core.jsonl") ==
                    ReadTextFile(testing::FixturePath("heat_island/expected_core_labels.jsonl"));
  const bool gazetteer =
      ReadTextFile(dir / "gaz.jsonl") ==
      ReadTextFile(testing::FixturePath("heat_island/expected_gazetteer_labels.jsonl"));
  std::set<std::string> core_text;
  std::set<std::string> gaz_text;
  for (const auto& l : ReadLabels(dir / "core.jsonl")) {
    core_text.insert(docs[0].SpanText(l.span.sent_idx, l.span.start, l.span.end));
  }
  for (const auto& l : ReadLabels(dir / "gaz.jsonl")) {
    gaz_text.insert(docs[0].SpanText(l.span.sent_idx, l.span.start, l.span.end));
  }
  const bool text = core_text == std::set<std::string>{"heat island effect"} &&
                    gaz_text == std::set<std::string>{"island effect"};
  return {core && gazetteer && text,
          std::string("core labels ") + (core ? "match" : "differ") + ", gazetteer labels " +
              (gazetteer ? "match" : "differ") + ", surfaces " + (text ? "ok" : "wrong")};
}

Outcome GradientCheck() {
  const auto start = Clock::now();
  const Architecture arch;  // production shape
  std::size_t checked = 0;
  std::size_t kinks = 0;
  std::vector<double> worst(kParamBlockNames.size(), 0.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(5000 + seed);
    const auto params = oracle::RandomParams(arch, rng.Next());
    std::vector<Example> batch;
    for (int i = 0; i < 3; ++i) {
      const auto k = static_cast<std::size_t>(rng.Between(2, 6));
      batch.push_back({oracle::RandomFeature(rng.Next(), arch.channels, k),
                       static_cast<float>(rng.Below(2))});
    }
    Gradients grad(arch);
    LossAndGradient(params, batch, &grad);
    const auto analytic = grad.blocks();
    for (std::size_t b = 0; b < analytic.size(); ++b) {
      // Small blocks are checked in full, large ones on a seeded sample.
      std::vector<std::size_t> indices;
      if (analytic[b].size() <= 64) {
        for (std::size_t i = 0; i < analytic[b].size(); ++i) indices.push_back(i);
      } else {
        for (int i = 0; i < 64; ++i) indices.push_back(rng.Below(analytic[b].size()));
      }
      for (std::size_t i : indices) {
        ++checked;
        const double numeric = oracle::NumericGradient(params, b, i, batch, 1e-4);
        const double a = analytic[b][i];
        const double denom = std::max({std::abs(a), std::abs(numeric), 1e-6});
        const double error = std::abs(a - numeric) / denom;
        // A central difference across a ReLU kink is not a valid reference.
        if (error >= 1e-3 && oracle::StraddlesKink(params, b, i, batch, 1e-4)) {
          ++kinks;
          continue;
        }
        worst[b] = std::max(worst[b], error);
      }
    }
  }
  const double seconds = Seconds(start);
  bool ok = seconds < 30.0 && kinks * 50 <= checked;
  std::string detail;
  for (std::size_t b = 0; b < worst.size(); ++b) {
    ok = ok && worst[b] < 1e-3;
    detail += std::string(kParamBlockNames[b]) + " " + Fmt("%.2e", worst[b]) + ", ";
  }
  detail += std::to_string(checked) + " entries over 20 seeds (" + std::to_string(kinks) +
            " skipped at a ReLU kink), " + Fmt("%.1f", seconds) + " s";
  return {ok, "max relative error " + detail};
}

Outcome SurfaceAgnosticism() {
  SyntheticCorpusOptions opt;
  opt.n_docs = 20;
  opt.seed = 31;
  const auto corpus = GenerateSyntheticCorpus(opt);
  HashAttentionProvider hash(17);
  std::vector<AttentionTensor> tensors;
  for (const auto& doc : corpus.docs) {
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      tensors.push_back(ComputeAttention(hash, {doc.id, s}, doc.sentences[s]));
    }
  }
  const auto reader = std::make_shared<const ArchiveReader>(
      std::make_shared<MemoryByteSource>(EncodeArchive(tensors)));
  const ArchiveAttentionProvider provider(reader);
  const auto params = oracle::RandomParams(Architecture{}, 3);
  TagOptions tag;
  tag.threshold = 0.0;
  std::size_t compared = 0;
  std::size_t differing = 0;
  for (const auto& doc : corpus.docs) {
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      SentenceTokens renamed = doc.sentences[s];
      for (auto& w : renamed.words) w = "surface" + std::to_string(Fnv1a64(w) % 9973);
      const auto a = TagSentence({doc.id, s}, doc.sentences[s], provider, params, tag);
      const auto b = TagSentence({doc.id, s}, renamed, provider, params, tag);
      if (a.predictions.size() != b.predictions.size()) {
        ++differing;
        continue;
      }
      for (std::size_t i = 0; i < a.predictions.size(); ++i) {
        ++compared;
        if (std::memcmp(&a.predictions[i].logit, &b.predictions[i].logit, sizeof(double)) != 0 ||
            a.predictions[i].span != b.predictions[i].span) {
          ++differing;
        }
      }
    }
  }
  return {differing == 0 && compared > 0,
          std::to_string(compared) + " span logits compared bitwise, " +
              std::to_string(differing) + " differ"};
}

struct PipelineRun {
  double f1 = 0.0;
  double seconds = 0.0;
  std::string error;
};

PipelineRun RunSyntheticPipeline(const std::filesystem::path& dir, const std::string& delta) {
  PipelineRun run;
  const auto start = Clock::now();
  auto p = [&](const std::string& name) { return (dir / name).string(); };
  const std::vector<std::vector<std::string>> steps = {
      {"gen-synth", "--out-dir", p("syn"), "--n-docs", "200", "--bank-size", "40", "--delta",
       delta, "--holdout", "40"},
      {"mine-labels", "--corpus", p("syn/corpus.jsonl"), "--out", p("labels.jsonl")},
      {"extract-features", "--corpus", p("syn/corpus.jsonl"), "--planted", p("syn/planted.json"),
       "--out", p("train.ucat")},
      {"extract-features", "--corpus", p("syn/heldout_corpus.jsonl"), "--planted",
       p("syn/planted.json"), "--out", p("heldout.ucat")},
      {"train", "--corpus", p("syn/corpus.jsonl"), "--labels", p("labels.jsonl"), "--archive",
       p("train.ucat"), "--out", p("model.ucpm")},
      {"tag", "--corpus", p("syn/heldout_corpus.jsonl"), "--archive", p("heldout.ucat"),
       "--checkpoint", p("model.ucpm"), "--out", p("predictions.jsonl")},
      {"eval-tagging", "--predictions", p("predictions.jsonl"), "--gold",
       p("syn/heldout_gold_spans.jsonl"), "--report", p("tagging.json")},
  };
  for (auto step : steps) {
    step.insert(step.begin(), {"--seed", "7", "--threads", "1"});
    const auto r = Cli(step);
    if (r.code != 0) {
      run.error = step[4] + " exited " + std::to_string(r.code) + ": " + r.err;
      return run;
    }
  }
  run.seconds = Seconds(start);
  const auto report = nlohmann::json::parse(ReadTextFile(dir / "tagging.json"));
  run.f1 = report.at("metrics").at("f1").get<double>();
  return run;
}

Outcome SyntheticEndToEnd() {
  testing::TempDir planted_dir;
  testing::TempDir control_dir;
  const auto planted = RunSyntheticPipeline(planted_dir.path(), "6");
  if (!planted.error.empty()) return {false, planted.error};
  const auto control = RunSyntheticPipeline(control_dir.path(), "0");
  if (!control.error.empty()) return {false, "control: " + control.error};
  return {planted.f1 >= 0.90 && control.f1 <= 0.55 && planted.seconds < 300.0 &&
              control.seconds < 300.0,
          "held-out F1 " + Fmt("%.4f", planted.f1) + " (" + Fmt("%.1f", planted.seconds) +
              " s), delta=0 control F1 " + Fmt("%.4f", control.f1) + " (" +
              Fmt("%.1f", control.seconds) + " s)"};
}

ExampleSet SeparableExamples(std::uint64_t seed) {
  ExampleSet set;
  Rng rng(seed);
  for (std::size_t d = 0; d < 8; ++d) {
    for (std::size_t i = 0; i < 6; ++i) {
      const float label = static_cast<float>(i % 2);
      const auto k = static_cast<std::size_t>(rng.Between(2, 6));
      auto f = oracle::RandomFeature(rng.Next(), 4, k);
      if (label == 1.0f) {
        for (std::size_t c = 0; c < 4; ++c) {
          for (std::size_t r = 0; r < k; ++r) f.values[(c * k + r) * k + r] += 2.0f;
        }
      }
      set.doc_ids.push_back("d" + std::to_string(d));
      set.examples.push_back({std::move(f), label});
    }
  }
  return set;
}

Outcome EarlyStopping() {
  const auto data = SeparableExamples(11);
  const std::vector<double> script = {0.60, 0.72, 0.70, 0.95, 0.99};
  auto scripted = [&](std::size_t epoch, double) { return script.at(epoch - 1); };
  TrainConfig config;
  config.seed = 3;
  config.batch_size = 16;
  config.validation_fraction = 0.25;
  config.max_epochs = 5;
  TrainHooks hooks;
  hooks.validation_f1 = scripted;
  const auto result = Train(data, config, hooks);
  auto two = config;
  two.max_epochs = 2;
  TrainHooks two_hooks;
  two_hooks.validation_f1 = scripted;
  const bool same_params = Train(data, two, two_hooks).params == result.params;
  const bool ok = result.history.size() == 3 && result.best_epoch == 2 &&
                  result.best_val_f1 == 0.72 && same_params;
  return {ok, "ran " + std::to_string(result.history.size()) + " epochs, returned epoch " +
                  std::to_string(result.best_epoch) + ", parameters " +
                  (same_params ? "equal" : "differ from") + " the epoch-2 state"};
}

AttentionTensor RandomTensor(Rng& rng, SentenceKey key, std::size_t n, std::size_t layers,
                             std::size_t heads) {
  AttentionTensor t(std::move(key), n, layers, heads);
  for (std::size_t l = 0; l < layers; ++l) {
    for (std::size_t h = 0; h < heads; ++h) {
      for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        auto row = t.row(l, h, i);
        for (auto& v : row) sum += (v = static_cast<float>(rng.Uniform(0.01, 1.0)));
        for (auto& v : row) v = static_cast<float>(v / sum);
      }
    }
  }
  return t;
}

std::vector<AttentionTensor> RandomTensors(Rng& rng) {
  std::vector<AttentionTensor> out;
  const std::size_t count = 1 + rng.Below(8);
  for (std::size_t i = 0; i < count; ++i) {
    const auto n = static_cast<std::size_t>(rng.Between(1, 12));
    out.push_back(RandomTensor(rng, {"doc" + std::to_string(rng.Below(5)), i}, n,
                               1 + rng.Below(3), 1 + rng.Below(12)));
  }
  return out;
}

ModelCheckpoint RandomCheckpoint(Rng& rng) {
  Architecture arch;
  arch.channels = 1 + rng.Below(40);
  arch.conv1_filters = 1 + rng.Below(33);
  arch.conv2_filters = 1 + rng.Below(33);
  arch.kernel = 1 + 2 * rng.Below(3);
  arch.k_max = 2 + rng.Below(6);
  ModelCheckpoint c;
  c.params = oracle::RandomParams(arch, rng.Next());
  c.config.seed = rng.Next();
  c.config.learning_rate = rng.Uniform(1e-4, 1e-2);
  c.config.k_max = arch.k_max;
  c.best_epoch = 1 + rng.Below(50);
  c.validation_f1 = rng.Uniform(0.0, 1.0);
  c.provider = "provider-" + std::to_string(rng.Below(1000));
  return c;
}

// Offsets of every record's crc and payload bytes.
std::vector<std::size_t> RecordBytes(const ArchiveReader& reader,
                                     const std::vector<std::uint8_t>& bytes) {
  std::vector<std::size_t> out;
  (void)reader;
  // Parse the index directly: header 16 bytes, then key_len|key|offset|length.
  ByteReader r(bytes, "archive");
  r.Bytes(8);
  const std::uint64_t count = r.U64();
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::size_t key_len = r.U16();
    r.Bytes(key_len);
    const std::uint64_t offset = r.U64();
    const std::uint64_t length = r.U64();
    for (std::uint64_t b = offset + 4; b < offset + length; ++b) out.push_back(b);
  }
  return out;
}

Outcome CodecRoundTrips() {
  Rng rng(8080);
  testing::TempDir dir;
  std::size_t archive_ok = 0;
  std::size_t checkpoint_ok = 0;
  std::size_t archive_detected = 0;
  std::size_t checkpoint_detected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto tensors = RandomTensors(rng);
    const auto bytes = EncodeArchive(tensors);
    const auto path = dir / ("a" + std::to_string(trial) + ".ucat");
    WriteArchive(path, tensors);
    const auto reader = ArchiveReader::Open(path);
    bool same = ReadFileBytes(path) == bytes && reader.size() == tensors.size();
    std::vector<AttentionTensor> back;
    for (const auto& t : tensors) {
      back.push_back(reader.Read(t.key()));
      same = same && back.back() == t;
    }
    same = same && EncodeArchive(back) == bytes;
    archive_ok += same;

    const auto record_bytes = RecordBytes(reader, bytes);
    auto corrupt = bytes;
    corrupt[record_bytes[rng.Below(record_bytes.size())]] ^=
        static_cast<std::uint8_t>(1 + rng.Below(255));
    ArchiveReader bad(std::make_shared<MemoryByteSource>(corrupt));
    bool flagged = false;
    for (const auto& t : tensors) {
      const auto code = CodeOf([&] { bad.Read(t.key()); });
      if (code == ErrorCode::kChecksum) flagged = true;
    }
    archive_detected += flagged;

    const auto checkpoint = RandomCheckpoint(rng);
    const auto encoded = EncodeCheckpoint(checkpoint);
    const auto cpath = dir / ("m" + std::to_string(trial) + ".ucpm");
    SaveCheckpoint(cpath, checkpoint);
    const auto loaded = LoadCheckpoint(cpath);
    checkpoint_ok += loaded == checkpoint && EncodeCheckpoint(loaded) == encoded &&
                     ReadFileBytes(cpath) == encoded;
    auto broken = encoded;
    broken[12 + rng.Below(broken.size() - 12)] ^= static_cast<std::uint8_t>(1 + rng.Below(255));
    checkpoint_detected += CodeOf([&] { DecodeCheckpoint(broken); }) == ErrorCode::kChecksum;
  }
  const bool ok = archive_ok == 100 && checkpoint_ok == 100 && archive_detected == 100 &&
                  checkpoint_detected == 100;
  return {ok, "archive roundtrip " + std::to_string(archive_ok) + "/100, checkpoint roundtrip " +
                  std::to_string(checkpoint_ok) + "/100, corruption detected " +
                  std::to_string(archive_detected) + "/100 archive, " +
                  std::to_string(checkpoint_detected) + "/100 checkpoint"};
}

DocumentSpan DS(std::string doc, std::size_t sent, std::size_t start, std::size_t end) {
  return {std::move(doc), Span{sent, start, end}};
}

Outcome MetricOracles() {
  const std::vector<DocumentSpan> gold = {DS("a", 0, 0, 2), DS("a", 0, 3, 5), DS("a", 1, 1, 3),
                                          DS("b", 0, 0, 3), DS("b", 2, 4, 6)};
  const std::vector<DocumentSpan> pred = {DS("a", 0, 0, 2), DS("a", 0, 3, 5), DS("a", 1, 1, 3),
                                          DS("b", 0, 0, 3), DS("a", 0, 0, 3), DS("b", 2, 4, 7),
                                          DS("c", 0, 0, 2)};
  const auto tagging = EvaluateTagging(pred, gold);
  const double f1 = tagging.metric("f1");
  bool ok = std::abs(tagging.metric("precision") - 4.0 / 7.0) < 1e-9 &&
            std::abs(tagging.metric("recall") - 0.8) < 1e-9 && std::abs(f1 - 2.0 / 3.0) < 1e-9;

  const std::vector<GoldKeyphrases> kp_gold = {
      {"d1", {"alpha beta", "gamma", "delta phrase", "epsilon"}},
      {"d2", {"zeta eta", "theta"}},
  };
  const std::vector<KeyphrasePrediction> kp_pred = {
      {"d1",
       {"alpha beta", "gamma", "delta phrase", "other"},
       {"alpha beta", "x1", "gamma", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "delta phrase"}},
      {"d2", {"zeta eta", "other"}, {"y1", "Zeta  Eta", "y2", "y3"}},
  };
  const auto kp = EvaluateKeyphrase(kp_pred, kp_gold);
  const double recall = kp.metric("recall");
  const double f1_at_10 = kp.metric("f1_at_10");
  ok = ok && std::abs(recall - 0.625) < 1e-9 && std::abs(f1_at_10 - 0.22619047619047619) < 1e-9;

  Rng rng(99);
  std::size_t order_changes = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<PhraseOccurrence> occ;
    for (int i = 0; i < 300; ++i) {
      occ.push_back({"p" + std::to_string(rng.Below(60)), rng.Uniform(-8.0, 8.0)});
    }
    const double c = trial % 2 ? rng.Uniform(1e-3, 1e3) : std::ldexp(1.0, trial % 9);
    auto scaled = occ;
    for (auto& o : scaled) o.logit *= c;
    const auto a = RankPhrasesGlobal(occ);
    const auto b = RankPhrasesGlobal(scaled);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].phrase == b[i].phrase;
    order_changes += !same;
  }
  ok = ok && order_changes == 0;
  return {ok, "tagging F1 " + Fmt("%.12f", f1) + ", keyphrase recall " +
                  Fmt("%.12f", recall) + ", F1@10 " + Fmt("%.12f", f1_at_10) +
                  ", ranking order changed under scaling in " +
                  std::to_string(order_changes) + "/200 trials"};
}

// Every regular file under `root`, keyed by relative path.
std::map<std::string, std::string> Snapshot(const std::filesystem::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    files[std::filesystem::relative(entry.path(), root).string()] = ReadTextFile(entry.path());
  }
  return files;
}

Outcome Determinism() {
  testing::TempDir dir;
  auto p = [&](const std::string& name) { return dir.str(name); };
  std::vector<std::vector<std::string>> commands = {
      {"gen-synth", "--out-dir", p("syn"), "--n-docs", "30", "--holdout", "6", "--report",
       p("r/gen-synth.json")},
      {"mine-labels", "--corpus", p("syn/corpus.jsonl"), "--out", p("labels.jsonl"), "--report",
       p("r/mine-labels.json")},
      {"match-gazetteer", "--corpus", p("syn/corpus.jsonl"), "--gazetteer", p("gazetteer.txt"),
       "--out", p("gazetteer_labels.jsonl"), "--report", p("r/match-gazetteer.json")},
      {"extract-features", "--corpus", p("syn/corpus.jsonl"), "--planted", p("syn/planted.json"),
       "--out", p("train.ucat"), "--report", p("r/extract-features.json")},
      {"train", "--corpus", p("syn/corpus.jsonl"), "--labels", p("labels.jsonl"), "--archive",
       p("train.ucat"), "--out", p("model.ucpm"), "--max-epochs", "3", "--train-report",
       p("epochs.jsonl"), "--report", p("r/train.json")},
      {"tag", "--corpus", p("syn/heldout_corpus.jsonl"), "--planted", p("syn/planted.json"),
       "--checkpoint", p("model.ucpm"), "--out", p("predictions.jsonl"), "--report",
       p("r/tag.json")},
      {"rank", "--corpus", p("syn/heldout_corpus.jsonl"), "--predictions", p("predictions.jsonl"),
       "--out", p("ranking.jsonl"), "--annotations", p("annotations.tsv"), "--ks", "1,3",
       "--report", p("r/rank.json")},
      {"eval-kp", "--corpus", p("syn/heldout_corpus.jsonl"), "--predictions",
       p("predictions.jsonl"), "--gold", p("syn/heldout_gold_keyphrases.jsonl"), "--stem",
       "--report", p("r/eval-kp.json")},
      {"eval-tagging", "--predictions", p("predictions.jsonl"), "--gold",
       p("syn/heldout_gold_spans.jsonl"), "--report", p("r/eval-tagging.json")},
      {"sample-annotation", "--ranking", p("ranking.jsonl"), "--out", p("sample.txt"), "--size",
       "5", "--report", p("r/sample-annotation.json")},
  };
  std::filesystem::create_directories(dir / "r");
  auto run_all = [&](std::vector<std::string>* outputs) -> std::string {
    for (const auto& command : commands) {
      if (command[0] == "match-gazetteer") {
        // Gazetteer of the planted phrases, written before it is needed.
        const auto planted = PlantedAttentionParams::Load(dir / "syn" / "planted.json");
        std::string text;
        for (std::size_t i = 0; i < planted.phrases.size(); i += 2) {
          text += JoinWords(planted.phrases[i], 0, planted.phrases[i].size()) + "\n";
        }
        WriteTextFile(dir / "gazetteer.txt", text);
      }
      if (command[0] == "rank") {
        WriteTextFile(dir / "annotations.tsv", "");
      }
      std::vector<std::string> args = {"--seed", "13", "--threads", "1"};
      args.insert(args.end(), command.begin(), command.end());
      const auto r = Cli(args);
      if (r.code != 0) return command[0] + " exited " + std::to_string(r.code) + ": " + r.err;
      outputs->push_back(r.out);
    }
    return {};
  };
  std::vector<std::string> first_out;
  std::vector<std::string> second_out;
  if (auto e = run_all(&first_out); !e.empty()) return {false, e};
  const auto first = Snapshot(dir.path());
  if (auto e = run_all(&second_out); !e.empty()) return {false, e};
  const auto second = Snapshot(dir.path());
  std::vector<std::string> differing;
  for (const auto& [name, bytes] : first) {
    auto it = second.find(name);
    if (it == second.end() || it->second != bytes) differing.push_back(name);
  }
  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (first_out[i] != second_out[i]) differing.push_back(commands[i][0] + " stdout");
  }
  std::string detail = std::to_string(commands.size()) + " subcommands, " +
                       std::to_string(first.size()) + " files compared";
  if (!differing.empty()) {
    detail += "; differing:";
    for (const auto& d : differing) detail += " " + d;
  }
  return {differing.empty() && first.size() == second.size(), detail};
}

}  // namespace
}  // namespace coretag

// With arguments, runs only the named checks.
int main(int argc, char** argv) {
  using coretag::Outcome;
  const std::vector<std::pair<const char*, Outcome (*)()>> checks = {
      {"core-miner-oracle", coretag::CoreMinerOracle},
      {"miner-invariants", coretag::MinerInvariants},
      {"heat-island-fixture", coretag::HeatIslandFixture},
      {"gradient-check", coretag::GradientCheck},
      {"surface-agnosticism", coretag::SurfaceAgnosticism},
      {"synthetic-end-to-end", coretag::SyntheticEndToEnd},
      {"early-stopping", coretag::EarlyStopping},
      {"codec-roundtrips", coretag::CodecRoundTrips},
      {"metric-oracles", coretag::MetricOracles},
      {"determinism", coretag::Determinism},
  };
  int failures = 0;
  const std::set<std::string> only(argv + 1, argv + argc);
  for (const auto& [name, check] : checks) {
    if (!only.empty() && !only.count(name)) continue;
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    failures += !outcome.pass;
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
