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

#include "coretag/corpus/corpus.h"

#include <nlohmann/json.hpp>
#include <unordered_set>

#include "coretag/util/error.h"
#include "coretag/util/jsonl.h"

namespace coretag {

std::size_t Document::WordCount() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

std::vector<std::string> Document::Words() const {
  std::vector<std::string> words;
  words.reserve(WordCount());
  for (const auto& s : sentences) {
    words.insert(words.end(), s.words.begin(), s.words.end());
  }
  return words;
}

std::string Document::SpanText(std::size_t sent_idx, std::size_t start,
                               std::size_t end) const {
  if (sent_idx >= sentences.size() || end > sentences[sent_idx].size() ||
      start > end) {
    throw Error(ErrorCode::kInvalidArgument,
                "span out of range in document '" + id + "'");
  }
  return JoinWords(sentences[sent_idx].words, start, end);
}

Document MakeDocument(std::string id, std::string raw_text) {
  Document doc;
  doc.id = std::move(id);
  doc.raw_text = std::move(raw_text);
  doc.sentences = TokenizeAndSplit(doc.raw_text);
  return doc;
}

CorpusFormat ParseCorpusFormat(std::string_view id) {
  if (id == "jsonl" || id == "json-lines") return CorpusFormat::kJsonLines;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown corpus format '" + std::string(id) + "'");
}

std::vector<Document> LoadCorpus(const std::filesystem::path& path,
                                 CorpusFormat format) {
  (void)format;  // JSON Lines is the only format.
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  ForEachLine(path, [&](std::size_t line_number, std::string_view line) {
    const std::string where =
        path.string() + ":" + std::to_string(line_number) + ": ";
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kFormat, where + "malformed JSON: " + e.what());
    }
    if (!record.is_object()) {
      throw Error(ErrorCode::kFormat, where + "record is not an object");
    }
    auto id = record.find("id");
    auto text = record.find("text");
    if (id == record.end() || !id->is_string()) {
      throw Error(ErrorCode::kFormat, where + "missing string field 'id'");
    }
    if (text == record.end() || !text->is_string()) {
      throw Error(ErrorCode::kFormat, where + "missing string field 'text'");
    }
    std::string doc_id = id->get<std::string>();
    if (!seen.insert(doc_id).second) {
      throw Error(ErrorCode::kFormat,
                  where + "duplicate document id '" + doc_id + "'");
    }
    docs.push_back(MakeDocument(std::move(doc_id), text->get<std::string>()));
  });
  return docs;
}

void WriteCorpus(const std::filesystem::path& path,
                 const std::vector<Document>& docs) {
  LineWriter out(path);
  for (const auto& doc : docs) {
    nlohmann::json record = {{"id", doc.id}, {"text", doc.raw_text}};
    out.Write(record.dump());
  }
  out.Close();
}

}  // namespace coretag
