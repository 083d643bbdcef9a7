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

#include "coretag/eval/ranking.h"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "coretag/corpus/tokenizer.h"
#include "coretag/util/error.h"
#include "coretag/util/jsonl.h"
#include "coretag/util/rng.h"

namespace coretag {

std::vector<PhraseOccurrence> PredictionOccurrences(
    const std::vector<Document>& docs,
    const std::vector<DocumentPrediction>& predictions) {
  std::unordered_map<std::string, const Document*> by_id;
  for (const Document& d : docs) by_id.emplace(d.id, &d);
  std::vector<PhraseOccurrence> out;
  out.reserve(predictions.size());
  for (const DocumentPrediction& p : predictions) {
    auto it = by_id.find(p.doc_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "prediction refers to unknown document '" + p.doc_id + "'");
    }
    const Span& s = p.prediction.span;
    out.push_back({it->second->SpanText(s.sent_idx, s.start, s.end),
                   p.prediction.logit});
  }
  return out;
}

std::vector<RankedPhrase> RankPhrasesGlobal(std::span<const PhraseOccurrence> occ) {
  struct Sum {
    double total = 0.0;
    std::size_t count = 0;
  };
  std::unordered_map<std::string, Sum> sums;
  for (const PhraseOccurrence& o : occ) {
    Sum& s = sums[o.phrase];
    s.total += o.logit;
    ++s.count;
  }
  std::vector<RankedPhrase> out;
  out.reserve(sums.size());
  for (const auto& [phrase, s] : sums) {
    out.push_back({phrase, s.total / static_cast<double>(s.count), s.count});
  }
  std::sort(out.begin(), out.end(), [](const RankedPhrase& a, const RankedPhrase& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.count != b.count) return a.count > b.count;
    return a.phrase < b.phrase;
  });
  return out;
}

void WriteRanking(const std::filesystem::path& path,
                  std::span<const RankedPhrase> ranking) {
  LineWriter out(path);
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    nlohmann::ordered_json j = {{"rank", i + 1},
                                {"phrase", ranking[i].phrase},
                                {"score", ranking[i].score},
                                {"count", ranking[i].count}};
    out.Write(j.dump());
  }
  out.Close();
}

std::vector<RankedPhrase> ReadRanking(const std::filesystem::path& path) {
  std::vector<RankedPhrase> out;
  ForEachLine(path, [&](std::size_t line_no, std::string_view line) {
    try {
      const auto j = nlohmann::json::parse(line);
      out.push_back({j.at("phrase").get<std::string>(), j.at("score").get<double>(),
                     j.at("count").get<std::size_t>()});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kFormat, path.string() + ":" + std::to_string(line_no) +
                                          ": " + e.what());
    }
  });
  return out;
}

std::vector<std::string> SampleForAnnotation(std::span<const RankedPhrase> ranking,
                                             std::size_t pool, std::size_t n,
                                             std::uint64_t seed) {
  const std::size_t limit =
      pool == 0 ? ranking.size() : std::min(pool, ranking.size());
  std::vector<std::size_t> idx(limit);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const std::size_t take = std::min(n, limit);
  Rng rng(seed);
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.Below(limit - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(take);
  std::sort(idx.begin(), idx.end());
  std::vector<std::string> out;
  out.reserve(take);
  for (std::size_t i : idx) out.push_back(ranking[i].phrase);
  return out;
}

void WriteAnnotationSample(const std::filesystem::path& path,
                           std::span<const std::string> phrases) {
  LineWriter out(path);
  for (const std::string& p : phrases) out.Write(p);
  out.Close();
}

std::map<std::string, bool> ReadAnnotations(const std::filesystem::path& path) {
  std::map<std::string, bool> out;
  ForEachLine(path, [&](std::size_t line_no, std::string_view line) {
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::kFormat,
                  path.string() + ":" + std::to_string(line_no) + ": " + why);
    };
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::size_t tab = line.rfind('\t');
    if (tab == std::string_view::npos) fail("expected phrase<TAB>0|1");
    const std::string_view mark = line.substr(tab + 1);
    if (mark != "0" && mark != "1") fail("label must be 0 or 1");
    const std::string phrase = NormalizePhrase(line.substr(0, tab));
    if (phrase.empty()) fail("empty phrase");
    const bool good = mark == "1";
    auto [it, inserted] = out.emplace(phrase, good);
    if (!inserted && it->second != good) fail("conflicting label for '" + phrase + "'");
  });
  return out;
}

EvalReport PrecisionAtK(std::span<const RankedPhrase> ranking,
                        const std::map<std::string, bool>& annotations,
                        std::span<const std::size_t> ks) {
  EvalReport r;
  r.task = "ranking";
  for (std::size_t k : ks) {
    const std::size_t limit = std::min(k, ranking.size());
    std::size_t annotated = 0;
    std::size_t good = 0;
    for (std::size_t i = 0; i < limit; ++i) {
      auto it = annotations.find(ranking[i].phrase);
      if (it == annotations.end()) continue;
      ++annotated;
      good += it->second;
    }
    const std::string suffix = "@" + std::to_string(k);
    r.metrics.emplace_back("precision" + suffix,
                           annotated ? static_cast<double>(good) / annotated : 0.0);
    r.counts.emplace_back("annotated" + suffix, annotated);
    r.counts.emplace_back("unannotated" + suffix, limit - annotated);
    if (annotated == 0) r.flags.push_back("no_annotations" + suffix);
  }
  r.counts.emplace_back("phrases", ranking.size());
  return r;
}

}  // namespace coretag
