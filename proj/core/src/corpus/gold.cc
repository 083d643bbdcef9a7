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

#include "coretag/corpus/gold.h"

#include <nlohmann/json.hpp>

#include "coretag/util/error.h"
#include "coretag/util/jsonl.h"

namespace coretag {
namespace {

nlohmann::json ParseRecord(const std::filesystem::path& path,
                           std::size_t line_number, std::string_view line) {
  try {
    auto record = nlohmann::json::parse(line);
    if (!record.is_object()) throw std::runtime_error("record is not an object");
    return record;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kFormat, path.string() + ":" +
                                        std::to_string(line_number) + ": " +
                                        e.what());
  }
}

}  // namespace

std::vector<GoldKeyphrases> LoadGoldKeyphrases(
    const std::filesystem::path& path) {
  std::vector<GoldKeyphrases> out;
  ForEachLine(path, [&](std::size_t n, std::string_view line) {
    auto record = ParseRecord(path, n, line);
    try {
      GoldKeyphrases g;
      g.id = record.at("id").get<std::string>();
      g.keyphrases = record.at("keyphrases").get<std::vector<std::string>>();
      out.push_back(std::move(g));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kFormat,
                  path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  });
  return out;
}

void WriteGoldKeyphrases(const std::filesystem::path& path,
                         const std::vector<GoldKeyphrases>& gold) {
  LineWriter out(path);
  for (const auto& g : gold) {
    out.Write(nlohmann::json{{"id", g.id}, {"keyphrases", g.keyphrases}}.dump());
  }
  out.Close();
}

std::vector<GoldSentenceSpans> LoadGoldSpans(const std::filesystem::path& path) {
  std::vector<GoldSentenceSpans> out;
  ForEachLine(path, [&](std::size_t n, std::string_view line) {
    auto record = ParseRecord(path, n, line);
    try {
      GoldSentenceSpans g;
      g.id = record.at("id").get<std::string>();
      g.sent_idx = record.at("sent_idx").get<std::size_t>();
      for (const auto& span : record.at("spans")) {
        if (!span.is_array() || span.size() != 2) {
          throw Error(ErrorCode::kFormat, path.string() + ":" +
                                              std::to_string(n) +
                                              ": span must be [start, end]");
        }
        auto start = span[0].get<std::size_t>();
        auto end = span[1].get<std::size_t>();
        if (end <= start) {
          throw Error(ErrorCode::kFormat, path.string() + ":" +
                                              std::to_string(n) +
                                              ": span end must exceed start");
        }
        g.spans.emplace_back(start, end);
      }
      out.push_back(std::move(g));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kFormat,
                  path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  });
  return out;
}

void WriteGoldSpans(const std::filesystem::path& path,
                    const std::vector<GoldSentenceSpans>& gold) {
  LineWriter out(path);
  for (const auto& g : gold) {
    nlohmann::json spans = nlohmann::json::array();
    for (const auto& [s, e] : g.spans) spans.push_back({s, e});
    out.Write(nlohmann::json{{"id", g.id}, {"sent_idx", g.sent_idx},
                             {"spans", spans}}
                  .dump());
  }
  out.Close();
}

}  // namespace coretag
