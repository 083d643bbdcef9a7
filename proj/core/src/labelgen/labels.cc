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

#include "coretag/labelgen/labels.h"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <tuple>

#include "coretag/corpus/corpus.h"
#include "coretag/util/error.h"
#include "coretag/util/jsonl.h"

namespace coretag {
namespace {

int SourceRank(LabelSource s) {
  switch (s) {
    case LabelSource::kCore:
      return 0;
    case LabelSource::kGazetteer:
      return 1;
    case LabelSource::kSampled:
      return 2;
  }
  return 3;
}

std::string DescribeKey(const SpanLabel& l) {
  return l.doc_id + "#" + std::to_string(l.span.sent_idx) + "[" +
         std::to_string(l.span.start) + "," + std::to_string(l.span.end) + ")";
}

}  // namespace

void CheckSpan(const Document& doc, const Span& span, std::size_t k_max) {
  if (span.sent_idx >= doc.sentences.size() || span.end <= span.start ||
      span.end > doc.sentences[span.sent_idx].size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "span outside its sentence in document '" + doc.id + "'");
  }
  if (span.length() < kMinSpanLength || span.length() > k_max) {
    throw Error(ErrorCode::kInvalidArgument,
                "span length " + std::to_string(span.length()) +
                    " outside [2, " + std::to_string(k_max) + "]");
  }
}

std::string_view PolarityName(Polarity p) {
  return p == Polarity::kPositive ? "pos" : "neg";
}

std::string_view SourceName(LabelSource s) {
  switch (s) {
    case LabelSource::kCore:
      return "core";
    case LabelSource::kGazetteer:
      return "gazetteer";
    case LabelSource::kSampled:
      return "sampled";
  }
  return "unknown";
}

void Canonicalize(LabelSet& labels) {
  std::sort(labels.begin(), labels.end(),
            [](const SpanLabel& a, const SpanLabel& b) {
              return std::tie(a.doc_id, a.span) < std::tie(b.doc_id, b.span) ||
                     (std::tie(a.doc_id, a.span) == std::tie(b.doc_id, b.span) &&
                      SourceRank(a.source) < SourceRank(b.source));
            });
  LabelSet out;
  out.reserve(labels.size());
  for (auto& label : labels) {
    if (!out.empty() && out.back().doc_id == label.doc_id &&
        out.back().span == label.span) {
      if (out.back().polarity != label.polarity) {
        throw Error(ErrorCode::kInvalidArgument,
                    "conflicting polarity for " + DescribeKey(label));
      }
      continue;  // Lower-ranked source for the same key.
    }
    out.push_back(std::move(label));
  }
  labels = std::move(out);
}

LabelSet MergeLabels(const LabelSet& a, const LabelSet& b) {
  LabelSet merged(a);
  merged.insert(merged.end(), b.begin(), b.end());
  Canonicalize(merged);
  return merged;
}

std::size_t CountPolarity(const LabelSet& labels, Polarity polarity) {
  return static_cast<std::size_t>(
      std::count_if(labels.begin(), labels.end(),
                    [&](const SpanLabel& l) { return l.polarity == polarity; }));
}

void WriteLabels(const std::filesystem::path& path, const LabelSet& labels) {
  LineWriter out(path);
  for (const auto& l : labels) {
    nlohmann::ordered_json record = {
        {"doc_id", l.doc_id},
        {"sent_idx", l.span.sent_idx},
        {"start", l.span.start},
        {"end", l.span.end},
        {"polarity", PolarityName(l.polarity)},
        {"source", SourceName(l.source)},
    };
    out.Write(record.dump());
  }
  out.Close();
}

LabelSet ReadLabels(const std::filesystem::path& path) {
  LabelSet labels;
  ForEachLine(path, [&](std::size_t n, std::string_view line) {
    const std::string where = path.string() + ":" + std::to_string(n) + ": ";
    try {
      auto record = nlohmann::json::parse(line);
      SpanLabel l;
      l.doc_id = record.at("doc_id").get<std::string>();
      l.span.sent_idx = record.at("sent_idx").get<std::size_t>();
      l.span.start = record.at("start").get<std::size_t>();
      l.span.end = record.at("end").get<std::size_t>();
      const auto polarity = record.at("polarity").get<std::string>();
      if (polarity == "pos") {
        l.polarity = Polarity::kPositive;
      } else if (polarity == "neg") {
        l.polarity = Polarity::kNegative;
      } else {
        throw Error(ErrorCode::kFormat, where + "bad polarity '" + polarity + "'");
      }
      const auto source = record.at("source").get<std::string>();
      if (source == "core") {
        l.source = LabelSource::kCore;
      } else if (source == "gazetteer") {
        l.source = LabelSource::kGazetteer;
      } else if (source == "sampled") {
        l.source = LabelSource::kSampled;
      } else {
        throw Error(ErrorCode::kFormat, where + "bad source '" + source + "'");
      }
      if (l.span.end < l.span.start + kMinSpanLength) {
        throw Error(ErrorCode::kFormat, where + "span shorter than two words");
      }
      labels.push_back(std::move(l));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kFormat, where + e.what());
    }
  });
  Canonicalize(labels);
  return labels;
}

}  // namespace coretag
