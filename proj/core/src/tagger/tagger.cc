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

#include "coretag/tagger/tagger.h"

#include <algorithm>
#include <string>

#include <nlohmann/json.hpp>

#include "coretag/util/error.h"
#include "coretag/util/jsonl.h"
#include "coretag/util/parallel.h"

namespace coretag {

std::vector<Span> EnumerateSpans(std::size_t sent_idx, std::size_t n_words,
                                 std::size_t k_max) {
  if (k_max < kMinSpanLength) {
    throw Error(ErrorCode::kInvalidArgument, "k_max must be >= 2");
  }
  std::vector<Span> spans;
  for (std::size_t start = 0; start + kMinSpanLength <= n_words; ++start) {
    const std::size_t last = std::min(n_words, start + k_max);
    for (std::size_t end = start + kMinSpanLength; end <= last; ++end) {
      spans.push_back({sent_idx, start, end});
    }
  }
  return spans;
}

DecodeMode ParseDecodeMode(std::string_view name) {
  if (name == "overlap") return DecodeMode::kOverlap;
  if (name == "greedy" || name == "greedy-nonoverlap") {
    return DecodeMode::kGreedyNonOverlap;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown decode mode '" + std::string(name) + "'");
}

std::string_view DecodeModeName(DecodeMode mode) {
  return mode == DecodeMode::kOverlap ? "overlap" : "greedy";
}

std::vector<Prediction> Decode(std::vector<Prediction> scored, double threshold,
                               DecodeMode mode) {
  std::erase_if(scored,
                [threshold](const Prediction& p) { return p.probability < threshold; });
  if (mode == DecodeMode::kGreedyNonOverlap) {
    std::sort(scored.begin(), scored.end(),
              [](const Prediction& a, const Prediction& b) {
                if (a.probability != b.probability) {
                  return a.probability > b.probability;
                }
                if (a.span.length() != b.span.length()) {
                  return a.span.length() > b.span.length();
                }
                return a.span < b.span;
              });
    std::vector<Prediction> kept;
    for (const Prediction& p : scored) {
      const bool clash = std::any_of(
          kept.begin(), kept.end(),
          [&](const Prediction& k) { return Overlaps(k.span, p.span); });
      if (!clash) kept.push_back(p);
    }
    scored = std::move(kept);
  }
  std::sort(scored.begin(), scored.end(),
            [](const Prediction& a, const Prediction& b) { return a.span < b.span; });
  return scored;
}

SentenceTags TagSentence(const SentenceKey& key, const SentenceTokens& sentence,
                         const AttentionProvider& provider,
                         const ModelParams& params, const TagOptions& options) {
  if (provider.channels() != params.arch.channels) {
    throw Error(ErrorCode::kInvalidArgument,
                "provider has " + std::to_string(provider.channels()) +
                    " channels, checkpoint expects " +
                    std::to_string(params.arch.channels));
  }
  SentenceTags out;
  const std::vector<Span> spans =
      EnumerateSpans(key.sent_idx, sentence.size(), params.arch.k_max);
  if (spans.empty()) return out;
  const std::size_t usable = TruncatedLength(sentence);
  const AttentionTensor tensor = ComputeAttention(provider, key, sentence);
  std::vector<Prediction> scored;
  scored.reserve(spans.size());
  for (const Span& span : spans) {
    if (span.end > usable) {
      ++out.skipped;
      continue;
    }
    const ForwardResult r = Forward(params, ExtractSpanFeature(tensor, span));
    scored.push_back({span, r.probability, r.logit});
  }
  out.predictions = Decode(std::move(scored), options.threshold, options.decode);
  return out;
}

CorpusTags TagCorpus(const std::vector<Document>& docs,
                     const AttentionProvider& provider, const ModelParams& params,
                     const TagOptions& options, int threads) {
  std::vector<SentenceKey> keys;
  std::vector<const SentenceTokens*> sentences;
  for (const Document& d : docs) {
    for (std::size_t s = 0; s < d.sentences.size(); ++s) {
      keys.push_back({d.id, s});
      sentences.push_back(&d.sentences[s]);
    }
  }
  std::vector<SentenceTags> tags(keys.size());
  ParallelFor(keys.size(), threads, [&](std::size_t i) {
    tags[i] = TagSentence(keys[i], *sentences[i], provider, params, options);
  });
  CorpusTags out;
  out.sentences = keys.size();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out.skipped += tags[i].skipped;
    for (const Prediction& p : tags[i].predictions) {
      out.predictions.push_back({keys[i].doc_id, p});
    }
  }
  return out;
}

void WritePredictions(const std::filesystem::path& path,
                      const std::vector<DocumentPrediction>& predictions) {
  LineWriter out(path);
  for (const DocumentPrediction& d : predictions) {
    nlohmann::ordered_json j = {{"doc_id", d.doc_id},
                                {"sent_idx", d.prediction.span.sent_idx},
                                {"start", d.prediction.span.start},
                                {"end", d.prediction.span.end},
                                {"prob", d.prediction.probability},
                                {"logit", d.prediction.logit}};
    out.Write(j.dump());
  }
  out.Close();
}

std::vector<DocumentPrediction> ReadPredictions(const std::filesystem::path& path) {
  std::vector<DocumentPrediction> out;
  ForEachLine(path, [&](std::size_t line_no, std::string_view line) {
    try {
      const auto j = nlohmann::json::parse(line);
      DocumentPrediction d;
      d.doc_id = j.at("doc_id").get<std::string>();
      d.prediction.span.sent_idx = j.at("sent_idx").get<std::size_t>();
      d.prediction.span.start = j.at("start").get<std::size_t>();
      d.prediction.span.end = j.at("end").get<std::size_t>();
      d.prediction.probability = j.at("prob").get<double>();
      d.prediction.logit = j.at("logit").get<double>();
      if (d.prediction.span.end <= d.prediction.span.start) {
        throw Error(ErrorCode::kFormat, "empty span");
      }
      out.push_back(std::move(d));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kFormat, path.string() + ":" + std::to_string(line_no) +
                                          ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kFormat, path.string() + ":" + std::to_string(line_no) +
                                          ": " + e.what());
    }
  });
  return out;
}

}  // namespace coretag
