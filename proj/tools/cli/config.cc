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

#include "cli/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <nlohmann/json.hpp>

#include "coretag/util/error.h"
#include "coretag/util/jsonl.h"

namespace coretag::cli {
namespace {

[[noreturn]] void ConfigError(const std::string& msg) {
  throw Error(ErrorCode::kConfig, msg);
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool ParseInt(std::string_view s, std::int64_t* out) {
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, *out);
  return ec == std::errc() && p == end && !s.empty();
}

bool ParseReal(std::string_view s, double* out) {
  if (s.empty()) return false;
  std::string copy(s);
  char* end = nullptr;
  *out = std::strtod(copy.c_str(), &end);
  return end == copy.c_str() + copy.size() && std::isfinite(*out);
}

bool ParseBool(std::string_view s, bool* out) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") {
    *out = true;
    return true;
  }
  if (s == "false" || s == "0" || s == "no" || s == "off") {
    *out = false;
    return true;
  }
  return false;
}

void CheckValue(const KeySpec& spec, const std::string& value) {
  std::int64_t i;
  double d;
  bool b;
  switch (spec.type) {
    case ValueType::kInt:
      if (!ParseInt(value, &i)) {
        ConfigError("key " + std::string(spec.key) + " expects an integer, got '" +
                    value + "'");
      }
      break;
    case ValueType::kReal:
      if (!ParseReal(value, &d)) {
        ConfigError("key " + std::string(spec.key) + " expects a number, got '" +
                    value + "'");
      }
      break;
    case ValueType::kBool:
      if (!ParseBool(value, &b)) {
        ConfigError("key " + std::string(spec.key) + " expects true/false, got '" +
                    value + "'");
      }
      break;
    case ValueType::kString:
    case ValueType::kPath:
      break;
  }
}

}  // namespace

const std::vector<KeySpec>& ConfigKeys() {
  static const std::vector<KeySpec> keys = {
      {"seed", ValueType::kInt, "0", "global seed for every stochastic step"},
      {"threads", ValueType::kInt, "0",
       "worker cap; 0 reads UCP_THREADS, falling back to 1"},
      {"paths.corpus", ValueType::kPath, "", "corpus JSON Lines"},
      {"paths.labels", ValueType::kPath, "", "label JSON Lines"},
      {"paths.archive", ValueType::kPath, "", "attention archive"},
      {"paths.checkpoint", ValueType::kPath, "", "classifier checkpoint"},
      {"paths.predictions", ValueType::kPath, "", "predictions JSON Lines"},
      {"paths.ranking", ValueType::kPath, "", "phrase ranking JSON Lines"},
      {"paths.report", ValueType::kPath, "", "JSON report with config echo"},
      {"paths.train_report", ValueType::kPath, "", "per-epoch training JSON Lines"},
      {"paths.output", ValueType::kPath, "", "primary output file"},
      {"paths.out_dir", ValueType::kPath, "", "output directory"},
      {"paths.gazetteer", ValueType::kPath, "", "gazetteer, one phrase per line"},
      {"paths.stopwords", ValueType::kPath, "", "stopword list override"},
      {"paths.gold", ValueType::kPath, "", "gold keyphrases or gold spans"},
      {"paths.planted", ValueType::kPath, "", "planted attention parameters"},
      {"paths.annotations", ValueType::kPath, "", "phrase<TAB>0|1 annotations"},
      {"mining.min_freq", ValueType::kInt, "2", "minimum pattern frequency"},
      {"mining.k_max", ValueType::kInt, "6", "maximum span length"},
      {"labels.negatives", ValueType::kBool, "true",
       "add an equal number of sampled negatives"},
      {"provider.kind", ValueType::kString, "auto",
       "attention provider: auto | archive | planted | hash"},
      {"provider.layers", ValueType::kInt, "3", "hash provider layers"},
      {"provider.heads", ValueType::kInt, "12", "hash provider heads"},
      {"train.learning_rate", ValueType::kReal, "0.001", "Adam learning rate"},
      {"train.adam_beta1", ValueType::kReal, "0.9", "Adam beta1"},
      {"train.adam_beta2", ValueType::kReal, "0.999", "Adam beta2"},
      {"train.adam_eps", ValueType::kReal, "1e-08", "Adam epsilon"},
      {"train.batch_size", ValueType::kInt, "128", "minibatch size"},
      {"train.max_epochs", ValueType::kInt, "50", "epoch ceiling"},
      {"train.validation_fraction", ValueType::kReal, "0.1",
       "fraction of documents held out for validation"},
      {"train.decision_threshold", ValueType::kReal, "0.5",
       "threshold for validation metrics"},
      {"tag.threshold", ValueType::kReal, "0.5", "prediction threshold"},
      {"tag.decode", ValueType::kString, "overlap", "overlap | greedy"},
      {"eval.top_k", ValueType::kInt, "10", "ranked keyphrases scored per doc"},
      {"eval.stem", ValueType::kBool, "false", "Porter-stem keyphrases"},
      {"eval.candidates", ValueType::kInt, "0",
       "candidates kept per document from the rank list (0 = all)"},
      {"eval.ks", ValueType::kString, "5000,50000", "comma-separated P@K cutoffs"},
      {"eval.sample_size", ValueType::kInt, "200", "annotation sample size"},
      {"eval.sample_pool", ValueType::kInt, "0",
       "sample from the top N ranked phrases (0 = all)"},
      {"synth.n_docs", ValueType::kInt, "200", "synthetic documents"},
      {"synth.vocab_size", ValueType::kInt, "2000", "synthetic filler vocabulary"},
      {"synth.bank_size", ValueType::kInt, "40", "synthetic phrase bank size"},
      {"synth.delta", ValueType::kReal, "6", "planted attention boost"},
      {"synth.noise", ValueType::kReal, "0.5", "planted attention noise"},
      {"synth.holdout", ValueType::kInt, "0",
       "trailing documents written to heldout_* files"},
  };
  return keys;
}

const KeySpec* FindKey(std::string_view key) {
  for (const KeySpec& k : ConfigKeys()) {
    if (k.key == key) return &k;
  }
  return nullptr;
}

PipelineConfig::PipelineConfig() {
  for (const KeySpec& k : ConfigKeys()) {
    values_.emplace(std::string(k.key), std::string(k.default_value));
  }
}

void PipelineConfig::MergeFile(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadTextFile(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::kIo,
                "cannot read config file " + path.string() + ": " + e.what());
  }
  MergeText(text, path.string());
}

void PipelineConfig::MergeText(std::string_view text, std::string_view origin) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                  ": expected 'key = value'");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    try {
      Set(key, std::string(value));
    } catch (const Error& e) {
      ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": " +
                  e.what());
    }
  }
}

void PipelineConfig::Set(std::string_view key, std::string value) {
  const KeySpec* spec = FindKey(key);
  if (!spec) ConfigError("unknown config key '" + std::string(key) + "'");
  CheckValue(*spec, value);
  values_[std::string(key)] = std::move(value);
  explicit_.insert(std::string(key));
}

bool PipelineConfig::IsSet(std::string_view key) const {
  return explicit_.find(key) != explicit_.end();
}

const std::string& PipelineConfig::Raw(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) ConfigError("unknown config key '" + std::string(key) + "'");
  return it->second;
}

std::string PipelineConfig::String(std::string_view key) const { return Raw(key); }

std::filesystem::path PipelineConfig::Path(std::string_view key) const {
  return std::filesystem::path(Raw(key));
}

std::int64_t PipelineConfig::Int(std::string_view key) const {
  std::int64_t v = 0;
  if (!ParseInt(Raw(key), &v)) {
    ConfigError("key " + std::string(key) + " is not an integer");
  }
  return v;
}

std::uint64_t PipelineConfig::Uint(std::string_view key) const {
  const std::int64_t v = Int(key);
  if (v < 0) ConfigError("key " + std::string(key) + " must be >= 0");
  return static_cast<std::uint64_t>(v);
}

std::size_t PipelineConfig::Count(std::string_view key) const {
  return static_cast<std::size_t>(Uint(key));
}

double PipelineConfig::Real(std::string_view key) const {
  double v = 0.0;
  if (!ParseReal(Raw(key), &v)) {
    ConfigError("key " + std::string(key) + " is not a number");
  }
  return v;
}

bool PipelineConfig::Bool(std::string_view key) const {
  bool v = false;
  if (!ParseBool(Raw(key), &v)) {
    ConfigError("key " + std::string(key) + " is not a boolean");
  }
  return v;
}

std::vector<std::size_t> PipelineConfig::CountList(std::string_view key) const {
  std::vector<std::size_t> out;
  std::string_view s = Raw(key);
  while (!s.empty()) {
    const std::size_t comma = s.find(',');
    const std::string_view item = Trim(s.substr(0, comma));
    std::int64_t v = 0;
    if (!ParseInt(item, &v) || v <= 0) {
      ConfigError("key " + std::string(key) + " expects positive integers, got '" +
                  std::string(item) + "'");
    }
    out.push_back(static_cast<std::size_t>(v));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::string PipelineConfig::ToJson() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [key, value] : values_) {
    const KeySpec* spec = FindKey(key);
    switch (spec->type) {
      case ValueType::kInt:
        j[key] = Int(key);
        break;
      case ValueType::kReal:
        j[key] = Real(key);
        break;
      case ValueType::kBool:
        j[key] = Bool(key);
        break;
      default:
        j[key] = value;
    }
  }
  return j.dump();
}

}  // namespace coretag::cli
