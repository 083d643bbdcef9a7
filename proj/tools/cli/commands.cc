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

#include "cli/commands.h"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coretag/attnfeat/archive.h"
#include "coretag/attnfeat/providers.h"
#include "coretag/attnfeat/synthetic.h"
#include "coretag/classifier/checkpoint.h"
#include "coretag/classifier/trainer.h"
#include "coretag/corpus/corpus.h"
#include "coretag/corpus/gold.h"
#include "coretag/corpus/stopwords.h"
#include "coretag/eval/keyphrase.h"
#include "coretag/eval/metrics.h"
#include "coretag/eval/ranking.h"
#include "coretag/eval/tfidf.h"
#include "coretag/labelgen/core_miner.h"
#include "coretag/labelgen/gazetteer.h"
#include "coretag/labelgen/labels.h"
#include "coretag/labelgen/negative_sampler.h"
#include "coretag/tagger/tagger.h"
#include "coretag/util/error.h"
#include "coretag/util/hash.h"
#include "coretag/util/jsonl.h"
#include "coretag/util/parallel.h"

namespace coretag::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::size_t kFeatureBatch = 256;

std::size_t KMax(const PipelineConfig& c) {
  const std::size_t k = c.Count("mining.k_max");
  if (k < kMinSpanLength) throw Error(ErrorCode::kConfig, "mining.k_max must be >= 2");
  return k;
}

std::size_t MinFreq(const PipelineConfig& c) {
  const std::size_t f = c.Count("mining.min_freq");
  if (f < 2) throw Error(ErrorCode::kConfig, "mining.min_freq must be >= 2");
  return f;
}

// "auto" picks the archive when one is configured (and read), then the
// planted parameters, then the hash provider.
std::string ProviderKind(const PipelineConfig& c, bool writes_archive) {
  std::string kind = c.String("provider.kind");
  if (kind == "auto") {
    if (!writes_archive && !c.Raw("paths.archive").empty()) {
      kind = "archive";
    } else if (!c.Raw("paths.planted").empty()) {
      kind = "planted";
    } else {
      kind = "hash";
    }
  }
  if (kind != "archive" && kind != "planted" && kind != "hash") {
    throw Error(ErrorCode::kConfig, "provider.kind must be auto, archive, planted or "
                                    "hash, got '" + kind + "'");
  }
  if (writes_archive && kind == "archive") {
    throw Error(ErrorCode::kConfig,
                "extract-features needs a computing provider (planted or hash)");
  }
  return kind;
}

void AddProviderInputs(const PipelineConfig& c, bool writes_archive,
                       Requirements& r) {
  const std::string kind = ProviderKind(c, writes_archive);
  if (kind == "archive") r.inputs.push_back("paths.archive");
  if (kind == "planted") r.inputs.push_back("paths.planted");
}

std::unique_ptr<AttentionProvider> MakeProvider(const PipelineConfig& c,
                                                bool writes_archive) {
  const std::string kind = ProviderKind(c, writes_archive);
  if (kind == "archive") return ArchiveAttentionProvider::Open(c.Path("paths.archive"));
  if (kind == "planted") {
    return std::make_unique<PlantedAttentionProvider>(
        PlantedAttentionParams::Load(c.Path("paths.planted")));
  }
  const std::size_t layers = c.Count("provider.layers");
  const std::size_t heads = c.Count("provider.heads");
  if (layers == 0 || heads == 0) {
    throw Error(ErrorCode::kConfig, "provider.layers and provider.heads must be > 0");
  }
  return std::make_unique<HashAttentionProvider>(c.Uint("seed"), layers, heads);
}

// Keeps the stopword list alive for MiningOptions.
struct Stopwords {
  std::optional<StopwordList> owned;
  const StopwordList* list = &StopwordList::Default();
};

Stopwords LoadStopwords(const PipelineConfig& c) {
  Stopwords s;
  if (!c.Raw("paths.stopwords").empty()) {
    s.owned = StopwordList::FromFile(c.Path("paths.stopwords"));
    s.list = &*s.owned;
  }
  return s;
}

// Labels every document with `positives_for` and, if enabled, an equal number
// of sampled negatives seeded per document.
LabelSet LabelCorpus(const std::vector<Document>& docs, const Context& ctx,
                     const std::function<LabelSet(const Document&)>& positives_for) {
  const std::size_t k_max = KMax(ctx.config);
  const bool negatives = ctx.config.Bool("labels.negatives");
  const std::uint64_t seed = ctx.config.Uint("seed");
  std::vector<LabelSet> per_doc(docs.size());
  ParallelFor(docs.size(), ctx.threads, [&](std::size_t i) {
    LabelSet labels = positives_for(docs[i]);
    if (negatives) {
      LabelSet neg = SampleNegatives(docs[i], labels, k_max, DeriveSeed(seed, docs[i].id));
      labels.insert(labels.end(), neg.begin(), neg.end());
    }
    per_doc[i] = std::move(labels);
  });
  LabelSet all;
  for (LabelSet& l : per_doc) all.insert(all.end(), l.begin(), l.end());
  Canonicalize(all);
  return all;
}

ordered_json LabelCounts(const std::vector<Document>& docs, const LabelSet& labels) {
  std::map<std::string, std::size_t> by_source;
  for (const SpanLabel& l : labels) ++by_source[std::string(SourceName(l.source))];
  ordered_json sources = ordered_json::object();
  for (const auto& [k, v] : by_source) sources[k] = v;
  return {{"documents", docs.size()},
          {"labels", labels.size()},
          {"positive", CountPolarity(labels, Polarity::kPositive)},
          {"negative", CountPolarity(labels, Polarity::kNegative)},
          {"by_source", sources}};
}

ordered_json ReportJson(const EvalReport& report) {
  ordered_json j = ordered_json::parse(report.ToJson());
  j.erase("config");
  return j;
}

// ---- subcommands ----------------------------------------------------------

ordered_json RunMineLabels(Context& ctx) {
  const auto docs = LoadCorpus(ctx.config.Path("paths.corpus"));
  const Stopwords stopwords = LoadStopwords(ctx.config);
  MiningOptions options;
  options.min_freq = MinFreq(ctx.config);
  options.k_max = KMax(ctx.config);
  options.stopwords = stopwords.list;
  const LabelSet labels = LabelCorpus(
      docs, ctx, [&](const Document& d) { return MineCorePhrases(d, options); });
  WriteLabels(ctx.config.Path("paths.labels"), labels);
  return {{"counts", LabelCounts(docs, labels)}};
}

ordered_json RunMatchGazetteer(Context& ctx) {
  const auto docs = LoadCorpus(ctx.config.Path("paths.corpus"));
  const Gazetteer gazetteer = Gazetteer::FromFile(ctx.config.Path("paths.gazetteer"));
  const std::size_t k_max = KMax(ctx.config);
  const LabelSet labels = LabelCorpus(docs, ctx, [&](const Document& d) {
    return GazetteerMatch(d, gazetteer, k_max);
  });
  WriteLabels(ctx.config.Path("paths.labels"), labels);
  ordered_json counts = LabelCounts(docs, labels);
  counts["gazetteer_entries"] = gazetteer.size();
  return {{"counts", counts}};
}

ordered_json RunGenSynth(Context& ctx) {
  const PipelineConfig& c = ctx.config;
  SyntheticCorpusOptions o;
  o.n_docs = c.Count("synth.n_docs");
  o.vocab_size = c.Count("synth.vocab_size");
  o.phrase_bank_size = c.Count("synth.bank_size");
  o.delta = c.Real("synth.delta");
  o.noise = c.Real("synth.noise");
  o.seed = c.Uint("seed");
  const std::size_t holdout = c.Count("synth.holdout");
  if (holdout > o.n_docs) {
    throw Error(ErrorCode::kConfig, "synth.holdout exceeds synth.n_docs");
  }
  const SyntheticCorpus corpus = GenerateSyntheticCorpus(o);

  const std::filesystem::path dir = c.Path("paths.out_dir");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());

  const std::size_t n_train = corpus.docs.size() - holdout;
  std::set<std::string> heldout_ids;
  for (std::size_t i = n_train; i < corpus.docs.size(); ++i) {
    heldout_ids.insert(corpus.docs[i].id);
  }
  auto split = [&](const auto& items, bool heldout) {
    std::decay_t<decltype(items)> out;
    for (const auto& item : items) {
      if (heldout_ids.count(item.id) == static_cast<std::size_t>(heldout)) {
        out.push_back(item);
      }
    }
    return out;
  };
  const std::vector<Document> train_docs(corpus.docs.begin(),
                                          corpus.docs.begin() + static_cast<std::ptrdiff_t>(n_train));
  WriteCorpus(dir / "corpus.jsonl", train_docs);
  WriteGoldSpans(dir / "gold_spans.jsonl", split(corpus.gold_spans, false));
  WriteGoldKeyphrases(dir / "gold_keyphrases.jsonl", split(corpus.gold_keyphrases, false));
  corpus.planted.Save(dir / "planted.json");
  if (holdout > 0) {
    const std::vector<Document> held(corpus.docs.begin() + static_cast<std::ptrdiff_t>(n_train),
                                     corpus.docs.end());
    WriteCorpus(dir / "heldout_corpus.jsonl", held);
    WriteGoldSpans(dir / "heldout_gold_spans.jsonl", split(corpus.gold_spans, true));
    WriteGoldKeyphrases(dir / "heldout_gold_keyphrases.jsonl",
                        split(corpus.gold_keyphrases, true));
  }
  std::size_t gold = 0;
  std::size_t heldout_gold = 0;
  for (const auto& g : corpus.gold_spans) {
    (heldout_ids.count(g.id) ? heldout_gold : gold) += g.spans.size();
  }
  return {{"counts",
           {{"documents", n_train},
            {"heldout_documents", holdout},
            {"phrase_bank", corpus.planted.phrases.size()},
            {"gold_spans", gold},
            {"heldout_gold_spans", heldout_gold}}}};
}

ordered_json RunExtractFeatures(Context& ctx) {
  const auto docs = LoadCorpus(ctx.config.Path("paths.corpus"));
  const auto provider = MakeProvider(ctx.config, /*writes_archive=*/true);
  std::vector<std::pair<SentenceKey, const SentenceTokens*>> sentences;
  std::size_t truncated = 0;
  for (const Document& d : docs) {
    for (std::size_t s = 0; s < d.sentences.size(); ++s) {
      sentences.push_back({{d.id, s}, &d.sentences[s]});
      truncated += d.sentences[s].size() > kMaxSentenceWords;
    }
  }
  ArchiveWriter writer(ctx.config.Path("paths.archive"));
  std::vector<AttentionTensor> batch;
  for (std::size_t b = 0; b < sentences.size(); b += kFeatureBatch) {
    const std::size_t n = std::min(kFeatureBatch, sentences.size() - b);
    batch.assign(n, AttentionTensor());
    ParallelFor(n, ctx.threads, [&](std::size_t i) {
      const auto& [key, sentence] = sentences[b + i];
      batch[i] = ComputeAttention(*provider, key, *sentence);
    });
    for (const AttentionTensor& t : batch) writer.Add(t);
  }
  writer.Finish();
  return {{"counts",
           {{"documents", docs.size()},
            {"sentences", sentences.size()},
            {"truncated_sentences", truncated}}},
          {"provider", provider->Describe()}};
}

TrainConfig MakeTrainConfig(const PipelineConfig& c) {
  TrainConfig t;
  t.learning_rate = c.Real("train.learning_rate");
  t.adam_beta1 = c.Real("train.adam_beta1");
  t.adam_beta2 = c.Real("train.adam_beta2");
  t.adam_eps = c.Real("train.adam_eps");
  t.batch_size = c.Count("train.batch_size");
  t.max_epochs = c.Count("train.max_epochs");
  t.validation_fraction = c.Real("train.validation_fraction");
  t.decision_threshold = c.Real("train.decision_threshold");
  t.seed = c.Uint("seed");
  t.k_max = KMax(c);
  try {
    t.Validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  return t;
}

ordered_json RunTrain(Context& ctx) {
  const TrainConfig config = MakeTrainConfig(ctx.config);
  const auto docs = LoadCorpus(ctx.config.Path("paths.corpus"));
  const LabelSet labels = ReadLabels(ctx.config.Path("paths.labels"));
  const auto provider = MakeProvider(ctx.config, false);
  const ExampleSet data = BuildExamples(labels, docs, *provider, config.k_max, ctx.threads);
  const TrainResult result = Train(data, config);
  if (!ctx.config.Raw("paths.train_report").empty()) {
    WriteTrainingReport(ctx.config.Path("paths.train_report"), result.history);
  }
  ModelCheckpoint checkpoint;
  checkpoint.params = result.params;
  checkpoint.config = config;
  checkpoint.best_epoch = result.best_epoch;
  checkpoint.validation_f1 = result.best_val_f1;
  checkpoint.provider = provider->Describe();
  SaveCheckpoint(ctx.config.Path("paths.checkpoint"), checkpoint);
  ordered_json epochs = ordered_json::array();
  for (const EpochMetrics& m : result.history) {
    epochs.push_back(ordered_json::parse(EpochMetricsJson(m)));
  }
  return {{"counts",
           {{"examples", data.size()},
            {"positive", data.CountLabel(1.0f)},
            {"negative", data.CountLabel(0.0f)},
            {"truncated_labels", data.truncated},
            {"train_examples", result.train_examples},
            {"validation_examples", result.validation_examples},
            {"train_documents", result.train_docs},
            {"validation_documents", result.validation_docs},
            {"epochs", result.history.size()},
            {"parameters", ParameterCount(result.params.arch)}}},
          {"best_epoch", result.best_epoch},
          {"best_val_f1", result.best_val_f1},
          {"provider", provider->Describe()},
          {"epochs", epochs}};
}

ordered_json RunTag(Context& ctx) {
  const auto docs = LoadCorpus(ctx.config.Path("paths.corpus"));
  const ModelCheckpoint checkpoint = LoadCheckpoint(ctx.config.Path("paths.checkpoint"));
  const auto provider = MakeProvider(ctx.config, false);
  TagOptions options;
  options.threshold = ctx.config.Real("tag.threshold");
  try {
    options.decode = ParseDecodeMode(ctx.config.String("tag.decode"));
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  const CorpusTags tags =
      TagCorpus(docs, *provider, checkpoint.params, options, ctx.threads);
  WritePredictions(ctx.config.Path("paths.predictions"), tags.predictions);
  return {{"counts",
           {{"documents", docs.size()},
            {"sentences", tags.sentences},
            {"predictions", tags.predictions.size()},
            {"skipped_truncated_spans", tags.skipped}}},
          {"provider", provider->Describe()}};
}

ordered_json RunRank(Context& ctx) {
  const auto docs = LoadCorpus(ctx.config.Path("paths.corpus"));
  const auto predictions = ReadPredictions(ctx.config.Path("paths.predictions"));
  const auto occurrences = PredictionOccurrences(docs, predictions);
  const auto ranking = RankPhrasesGlobal(occurrences);
  WriteRanking(ctx.config.Path("paths.ranking"), ranking);
  ordered_json result = {{"counts",
                          {{"occurrences", occurrences.size()},
                           {"phrases", ranking.size()}}}};
  if (!ctx.config.Raw("paths.annotations").empty()) {
    const auto annotations = ReadAnnotations(ctx.config.Path("paths.annotations"));
    const auto ks = ctx.config.CountList("eval.ks");
    result["precision_at_k"] = ReportJson(PrecisionAtK(ranking, annotations, ks));
  }
  return result;
}

ordered_json RunEvalKeyphrase(Context& ctx) {
  const auto docs = LoadCorpus(ctx.config.Path("paths.corpus"));
  const auto predictions = ReadPredictions(ctx.config.Path("paths.predictions"));
  const auto gold = LoadGoldKeyphrases(ctx.config.Path("paths.gold"));
  KeyphraseOptions options;
  options.top_k = ctx.config.Count("eval.top_k");
  options.stem = ctx.config.Bool("eval.stem");
  if (options.top_k == 0) throw Error(ErrorCode::kConfig, "eval.top_k must be > 0");
  const std::size_t keep = ctx.config.Count("eval.candidates");

  std::unordered_map<std::string, std::vector<Span>> spans;
  for (const DocumentPrediction& p : predictions) {
    spans[p.doc_id].push_back(p.prediction.span);
  }
  std::vector<DocumentPhrases> phrases;
  phrases.reserve(docs.size());
  for (const Document& d : docs) {
    phrases.push_back(CollectDocumentPhrases(d, spans[d.id]));
  }
  const DocumentFrequency df(phrases);
  std::vector<KeyphrasePrediction> extracted;
  for (const DocumentPhrases& d : phrases) {
    KeyphrasePrediction k;
    k.doc_id = d.doc_id;
    for (const ScoredPhrase& s : TfidfRank(d, df)) k.ranked.push_back(s.phrase);
    k.candidates = k.ranked;
    if (keep > 0 && k.candidates.size() > keep) k.candidates.resize(keep);
    extracted.push_back(std::move(k));
  }
  return ReportJson(EvaluateKeyphrase(extracted, gold, options));
}

ordered_json RunEvalTagging(Context& ctx) {
  const auto predictions = ReadPredictions(ctx.config.Path("paths.predictions"));
  const auto gold = LoadGoldSpans(ctx.config.Path("paths.gold"));
  return ReportJson(
      EvaluateTagging(PredictedDocumentSpans(predictions), GoldDocumentSpans(gold)));
}

ordered_json RunSampleAnnotation(Context& ctx) {
  const auto ranking = ReadRanking(ctx.config.Path("paths.ranking"));
  const auto sample =
      SampleForAnnotation(ranking, ctx.config.Count("eval.sample_pool"),
                          ctx.config.Count("eval.sample_size"), ctx.config.Uint("seed"));
  WriteAnnotationSample(ctx.config.Path("paths.output"), sample);
  return {{"counts", {{"ranked_phrases", ranking.size()}, {"sampled", sample.size()}}}};
}

Requirements Needs(std::vector<std::string> inputs, std::vector<std::string> outputs,
                   std::vector<std::string> optional_inputs = {}) {
  Requirements r;
  r.inputs = std::move(inputs);
  r.outputs = std::move(outputs);
  r.optional_inputs = std::move(optional_inputs);
  return r;
}

const FlagSpec kCorpus{"--corpus", "paths.corpus", "Corpus JSON Lines"};
const FlagSpec kReport{"--report", "paths.report", "JSON report with config echo"};
const FlagSpec kKMax{"--k-max", "mining.k_max", "Maximum span length"};
const FlagSpec kProvider{"--provider", "provider.kind",
                         "Attention provider: auto|archive|planted|hash"};
const FlagSpec kArchive{"--archive", "paths.archive", "Attention archive"};
const FlagSpec kPlanted{"--planted", "paths.planted", "Planted attention parameters"};
const FlagSpec kPredictions{"--predictions", "paths.predictions",
                            "Predictions JSON Lines"};

}  // namespace

void WriteReport(const std::filesystem::path& path, std::string_view text) {
  WriteTextFile(path, text);
}

const std::vector<CommandSpec>& Commands() {
  static const std::vector<CommandSpec> commands = {
      {"mine-labels",
       "Mine per-document core phrases and sample negatives into a label file.",
       {kCorpus,
        {"--out", "paths.labels", "Output label file"},
        {"--min-freq", "mining.min_freq", "Minimum pattern frequency"},
        kKMax,
        {"--stopwords", "paths.stopwords", "Stopword list override"},
        kReport},
       [](const PipelineConfig&) {
         return Needs({"paths.corpus"}, {"paths.labels"}, {"paths.stopwords"});
       },
       RunMineLabels},
      {"match-gazetteer",
       "Label gazetteer matches (distant supervision) and sample negatives.",
       {kCorpus,
        {"--gazetteer", "paths.gazetteer", "Gazetteer, one phrase per line"},
        {"--out", "paths.labels", "Output label file"},
        kKMax,
        kReport},
       [](const PipelineConfig&) {
         return Needs({"paths.corpus", "paths.gazetteer"}, {"paths.labels"});
       },
       RunMatchGazetteer},
      {"gen-synth",
       "Generate a synthetic corpus with planted phrases and gold files.",
       {{"--out-dir", "paths.out_dir", "Output directory"},
        {"--n-docs", "synth.n_docs", "Number of documents"},
        {"--vocab-size", "synth.vocab_size", "Filler vocabulary size"},
        {"--bank-size", "synth.bank_size", "Phrase bank size"},
        {"--delta", "synth.delta", "Planted attention boost"},
        {"--noise", "synth.noise", "Planted attention noise"},
        {"--holdout", "synth.holdout", "Trailing documents written as heldout_*"},
        kReport},
       [](const PipelineConfig&) { return Needs({}, {"paths.out_dir"}); },
       RunGenSynth},
      {"extract-features",
       "Compute attention tensors for every sentence into an archive.",
       {kCorpus,
        {"--out", "paths.archive", "Output attention archive"},
        kProvider,
        kPlanted,
        kReport},
       [](const PipelineConfig& c) {
         Requirements r = Needs({"paths.corpus"}, {"paths.archive"});
         AddProviderInputs(c, true, r);
         return r;
       },
       RunExtractFeatures},
      {"train",
       "Train the span classifier on labels and attention features.",
       {kCorpus,
        {"--labels", "paths.labels", "Label file"},
        kProvider,
        kArchive,
        kPlanted,
        {"--out", "paths.checkpoint", "Output checkpoint"},
        {"--train-report", "paths.train_report", "Per-epoch metrics JSON Lines"},
        kKMax,
        {"--learning-rate", "train.learning_rate", "Adam learning rate"},
        {"--batch-size", "train.batch_size", "Minibatch size"},
        {"--max-epochs", "train.max_epochs", "Epoch ceiling"},
        {"--validation-fraction", "train.validation_fraction",
         "Fraction of documents used for validation"},
        {"--threshold", "train.decision_threshold", "Validation decision threshold"},
        kReport},
       [](const PipelineConfig& c) {
         Requirements r =
             Needs({"paths.corpus", "paths.labels"}, {"paths.checkpoint"});
         AddProviderInputs(c, false, r);
         return r;
       },
       RunTrain},
      {"tag",
       "Score every candidate span of a corpus with a trained checkpoint.",
       {kCorpus,
        {"--checkpoint", "paths.checkpoint", "Classifier checkpoint"},
        kProvider,
        kArchive,
        kPlanted,
        {"--out", "paths.predictions", "Output predictions"},
        {"--threshold", "tag.threshold", "Prediction threshold"},
        {"--decode", "tag.decode", "overlap | greedy"},
        kReport},
       [](const PipelineConfig& c) {
         Requirements r =
             Needs({"paths.corpus", "paths.checkpoint"}, {"paths.predictions"});
         AddProviderInputs(c, false, r);
         return r;
       },
       RunTag},
      {"rank",
       "Rank predicted phrases corpus-wide by mean logit.",
       {kCorpus,
        kPredictions,
        {"--out", "paths.ranking", "Output ranking"},
        {"--annotations", "paths.annotations", "phrase<TAB>0|1 annotations"},
        {"--ks", "eval.ks", "Comma-separated P@K cutoffs"},
        kReport},
       [](const PipelineConfig&) {
         return Needs({"paths.corpus", "paths.predictions"}, {"paths.ranking"},
                      {"paths.annotations"});
       },
       RunRank},
      {"eval-kp",
       "Keyphrase evaluation: candidate recall and TF-IDF ranked F1@k.",
       {kCorpus,
        kPredictions,
        {"--gold", "paths.gold", "Gold keyphrases"},
        {"--candidates", "eval.candidates", "Candidates kept per document (0 = all)"},
        {"--top-k", "eval.top_k", "Ranked phrases scored per document"},
        {"--stem", "eval.stem", "Porter-stem before matching", true},
        kReport},
       [](const PipelineConfig&) {
         return Needs({"paths.corpus", "paths.predictions", "paths.gold"}, {});
       },
       RunEvalKeyphrase},
      {"eval-tagging",
       "Micro precision/recall/F1 of predicted spans against gold spans.",
       {kPredictions, {"--gold", "paths.gold", "Gold spans"}, kReport},
       [](const PipelineConfig&) {
         return Needs({"paths.predictions", "paths.gold"}, {});
       },
       RunEvalTagging},
      {"sample-annotation",
       "Draw a seeded phrase sample from a ranking for human annotation.",
       {{"--ranking", "paths.ranking", "Ranking from 'rank'"},
        {"--out", "paths.output", "Output sample, one phrase per line"},
        {"--size", "eval.sample_size", "Sample size"},
        {"--pool", "eval.sample_pool", "Sample from the top N phrases (0 = all)"},
        kReport},
       [](const PipelineConfig&) {
         return Needs({"paths.ranking"}, {"paths.output"});
       },
       RunSampleAnnotation},
  };
  return commands;
}

}  // namespace coretag::cli
