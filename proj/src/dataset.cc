// Copyright 2026 The mixgran Authors.
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

#include "mixgran/dataset.h"

#include <charconv>

#include "json.hpp"
#include "mixgran/digest.h"
#include "mixgran/error.h"
#include "mixgran/kernels.h"
#include "mixgran/textnorm.h"
#include "mixgran/tokenizer.h"

namespace mixgran {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::size_t kBuildBatchLines = 4096;

void AppendInts(std::string* out, const char* key, const auto& values) {
  out->push_back('"');
  *out += key;
  *out += "\":[";
  char buf[16];
  bool first = true;
  for (auto v : values) {
    if (!first) out->push_back(',');
    first = false;
    auto res = std::to_chars(buf, buf + sizeof(buf), static_cast<int32_t>(v));
    out->append(buf, res.ptr);
  }
  out->push_back(']');
}

std::string ExampleLine(const TrainingExample& ex) {
  std::string line;
  line.reserve(ex.input_ids.size() * 10 + 64);
  line.push_back('{');
  AppendInts(&line, "input_ids", ex.input_ids);
  line.push_back(',');
  AppendInts(&line, "labels", ex.labels);
  line.push_back(',');
  AppendInts(&line, "attention", ex.attention);
  line += "}\n";
  return line;
}

std::vector<int32_t> IntArray(const json& j, const char* key,
                              const std::string& where, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array()) {
    throw Error(ErrorCode::kFormatError,
                where + ": missing array '" + key + "'", line);
  }
  std::vector<int32_t> out;
  out.reserve(it->size());
  for (const json& v : *it) {
    if (!v.is_number_integer()) {
      throw Error(ErrorCode::kFormatError,
                  where + ": non-integer in '" + key + "'", line);
    }
    out.push_back(v.get<int32_t>());
  }
  return out;
}

json ConfigJson(const MaskingConfig& config) {
  return json{
      {"action_probs", config.action_probs},
      {"cmlm_rate", config.cmlm_rate},
      {"mask_rate", config.mask_rate},
      {"max_len", config.max_len},
      {"ngram_probs", config.ngram_probs},
      {"seed", config.seed},
      {"task", std::string(TaskName(config.task))},
  };
}

}  // namespace

std::string CanonicalConfigJson(const MaskingConfig& config) {
  return ConfigJson(config).dump();
}

std::string DatasetFingerprint(const MaskingConfig& config,
                               std::string_view vocab_sha256) {
  std::string material = CanonicalConfigJson(config);
  material += '\n';
  material += vocab_sha256;
  return Sha256Hex(material).substr(0, 16);
}

std::string ShardFileName(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "shard-%05zu.jsonl", index);
  return buf;
}

ShardWriter::ShardWriter(fs::path out_dir, std::size_t shard_size,
                         std::string fingerprint, std::size_t max_len)
    : out_dir_(std::move(out_dir)),
      shard_size_(shard_size),
      fingerprint_(std::move(fingerprint)),
      max_len_(max_len) {
  if (shard_size_ == 0) {
    throw Error(ErrorCode::kInvalidConfig, "shard_size must be positive");
  }
  std::error_code ec;
  fs::create_directories(out_dir_, ec);
  if (ec) {
    throw Error(ErrorCode::kIoFailure,
                "cannot create " + out_dir_.string() + ": " + ec.message());
  }
}

void ShardWriter::Add(const TrainingExample& example) {
  pending_.push_back(ExampleLine(example));
  if (pending_.size() == shard_size_) Flush();
}

void ShardWriter::Flush() {
  if (pending_.empty()) return;
  Shard shard;
  shard.path = out_dir_ / ShardFileName(shards_.size());
  shard.example_count = pending_.size();
  shard.fingerprint = fingerprint_;
  std::ofstream out(shard.path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot write " + shard.path.string());
  }
  const json header{{"example_count", shard.example_count},
                    {"fingerprint", fingerprint_},
                    {"format_version", kShardFormatVersion},
                    {"max_len", max_len_}};
  out << header.dump() << '\n';
  for (const std::string& line : pending_) out << line;
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "write failed: " + shard.path.string());
  }
  pending_.clear();
  shards_.push_back(std::move(shard));
}

std::vector<Shard> ShardWriter::Finish() {
  Flush();
  return shards_;
}

std::vector<Shard> WriteShards(std::span<const TrainingExample> examples,
                               const fs::path& out_dir, std::size_t shard_size,
                               const std::string& fingerprint,
                               std::size_t max_len) {
  ShardWriter writer(out_dir, shard_size, fingerprint, max_len);
  for (const TrainingExample& ex : examples) writer.Add(ex);
  return writer.Finish();
}

ShardReader::ShardReader(std::vector<fs::path> paths)
    : paths_(std::move(paths)) {}

bool ShardReader::OpenNext() {
  if (next_path_ >= paths_.size()) return false;
  current_ = paths_[next_path_++];
  in_ = std::ifstream(current_, std::ios::binary);
  if (!in_) throw Error(ErrorCode::kIoFailure, "cannot open " + current_.string());
  line_ = 1;
  read_in_shard_ = 0;
  std::string text;
  if (!std::getline(in_, text)) {
    throw Error(ErrorCode::kFormatError, current_.string() + ": missing header",
                line_);
  }
  json h = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (!h.is_object() || !h.contains("fingerprint") ||
      !h["fingerprint"].is_string() || !h.contains("format_version") ||
      !h["format_version"].is_number_integer() || !h.contains("max_len") ||
      !h["max_len"].is_number_unsigned() || !h.contains("example_count") ||
      !h["example_count"].is_number_unsigned()) {
    throw Error(ErrorCode::kFormatError, current_.string() + ": bad header",
                line_);
  }
  header_.format_version = h["format_version"].get<int>();
  header_.fingerprint = h["fingerprint"].get<std::string>();
  header_.max_len = h["max_len"].get<std::size_t>();
  header_.example_count = h["example_count"].get<std::size_t>();
  if (header_.format_version != kShardFormatVersion) {
    throw Error(ErrorCode::kFormatError,
                current_.string() + ": unsupported format version " +
                    std::to_string(header_.format_version),
                line_);
  }
  if (next_path_ == 1) {
    fingerprint_ = header_.fingerprint;
  } else if (header_.fingerprint != fingerprint_) {
    throw Error(ErrorCode::kFingerprintMismatch,
                current_.string() + " has fingerprint " + header_.fingerprint +
                    ", expected " + fingerprint_);
  }
  return true;
}

bool ShardReader::Next(TrainingExample* example) {
  while (true) {
    if (!in_.is_open() || read_in_shard_ == header_.example_count) {
      if (in_.is_open()) {
        std::string extra;
        if (std::getline(in_, extra) && !extra.empty()) {
          throw Error(ErrorCode::kFormatError,
                      current_.string() + ": more examples than the header "
                                          "declares",
                      line_ + 1);
        }
        in_.close();
      }
      if (!OpenNext()) return false;
      continue;
    }
    std::string text;
    const bool got = static_cast<bool>(std::getline(in_, text));
    ++line_;
    const std::string where = current_.string();
    if (!got) {
      throw Error(ErrorCode::kFormatError,
                  where + ": expected " + std::to_string(header_.example_count) +
                      " examples, found " + std::to_string(read_in_shard_),
                  line_);
    }
    if (in_.eof()) {
      // Every example line is newline-terminated; a missing newline means the
      // file was cut short.
      throw Error(ErrorCode::kFormatError, where + ": truncated line", line_);
    }
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (!j.is_object()) {
      throw Error(ErrorCode::kFormatError, where + ": malformed JSON", line_);
    }
    TrainingExample ex;
    ex.input_ids = IntArray(j, "input_ids", where, line_);
    ex.labels = IntArray(j, "labels", where, line_);
    std::vector<int32_t> attention = IntArray(j, "attention", where, line_);
    if (ex.input_ids.size() != header_.max_len ||
        ex.labels.size() != header_.max_len ||
        attention.size() != header_.max_len) {
      throw Error(ErrorCode::kFormatError,
                  where + ": arrays must have length max_len", line_);
    }
    ex.attention.reserve(attention.size());
    for (int32_t a : attention) {
      if (a != 0 && a != 1) {
        throw Error(ErrorCode::kFormatError,
                    where + ": attention values must be 0 or 1", line_);
      }
      ex.attention.push_back(static_cast<uint8_t>(a));
    }
    ++read_in_shard_;
    *example = std::move(ex);
    return true;
  }
}

std::vector<TrainingExample> ReadShards(const std::vector<fs::path>& paths) {
  ShardReader reader(paths);
  std::vector<TrainingExample> out;
  TrainingExample ex;
  while (reader.Next(&ex)) out.push_back(std::move(ex));
  return out;
}

void WriteManifest(const fs::path& out_dir, const DatasetInfo& info,
                   const MaskingConfig& config, const fs::path& vocab_path,
                   const std::string& vocab_sha256) {
  json shards = json::array();
  for (const Shard& s : info.shards) {
    shards.push_back({{"path", s.path.filename().string()},
                      {"example_count", s.example_count}});
  }
  const json manifest{
      {"config", ConfigJson(config)},
      {"fingerprint", info.fingerprint},
      {"format_version", kShardFormatVersion},
      {"shards", shards},
      {"total_examples", info.total_examples},
      {"vocab", {{"path", vocab_path.string()}, {"sha256", vocab_sha256}}},
  };
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  std::ofstream out(out_dir / "manifest.json", std::ios::binary | std::ios::trunc);
  out << manifest.dump(2) << '\n';
  if (!out) {
    throw Error(ErrorCode::kIoFailure,
                "cannot write " + (out_dir / "manifest.json").string());
  }
}

namespace {

json ReadManifest(const fs::path& dir) {
  const fs::path path = dir / "manifest.json";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  json manifest = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (!manifest.is_object() || !manifest.contains("shards") ||
      !manifest["shards"].is_array()) {
    throw Error(ErrorCode::kFormatError, path.string() + ": bad manifest");
  }
  return manifest;
}

}  // namespace

std::vector<fs::path> ListShards(const fs::path& path) {
  if (!fs::is_directory(path)) {
    if (!fs::exists(path)) {
      throw Error(ErrorCode::kIoFailure, "no such dataset: " + path.string());
    }
    return {path};
  }
  const json manifest = ReadManifest(path);
  std::vector<fs::path> out;
  for (const json& s : manifest["shards"]) {
    if (!s.contains("path") || !s["path"].is_string()) {
      throw Error(ErrorCode::kFormatError, "manifest shard without a path");
    }
    out.push_back(path / s["path"].get<std::string>());
  }
  return out;
}

fs::path ManifestVocabPath(const fs::path& dataset_dir) {
  const json manifest = ReadManifest(dataset_dir);
  if (!manifest.contains("vocab") || !manifest["vocab"].contains("path")) {
    return {};
  }
  return manifest["vocab"]["path"].get<std::string>();
}

DatasetInfo BuildDataset(const fs::path& corpus_path, const fs::path& vocab_path,
                         const fs::path& out_dir, const BuildOptions& options) {
  options.masking.Validate();
  const Vocabulary vocab = LoadVocabulary(vocab_path);
  const std::string vocab_sha = Sha256FileHex(vocab_path);
  DatasetInfo info;
  info.fingerprint = DatasetFingerprint(options.masking, vocab_sha);

  ShardWriter writer(out_dir, options.shard_size, info.fingerprint,
                     options.masking.max_len);
  CorpusReader reader(corpus_path);
  std::vector<NormalizedText> batch;
  uint64_t ordinal = 0;
  bool more = true;
  while (more) {
    batch.clear();
    NormalizedText line;
    while (batch.size() < kBuildBatchLines && (more = reader.Next(&line))) {
      batch.push_back(std::move(line));
    }
    if (batch.empty()) break;
    const std::vector<TrainingExample> examples = kernels::MakeExamples(
        batch, vocab, options.masking, ordinal, options.workers);
    for (const TrainingExample& ex : examples) writer.Add(ex);
    ordinal += batch.size();
  }
  info.shards = writer.Finish();
  info.total_examples = ordinal;
  WriteManifest(out_dir, info, options.masking, vocab_path, vocab_sha);
  return info;
}

std::optional<std::vector<PieceId>> RecoverOriginal(
    const TrainingExample& example, const Vocabulary& vocab) {
  std::size_t real = 0;
  while (real < example.attention.size() && example.attention[real] == 1) {
    ++real;
  }
  if (real < 2 || example.input_ids.size() < real ||
      example.labels.size() < real ||
      example.input_ids[0] != Vocabulary::kClsId ||
      example.input_ids[real - 1] != Vocabulary::kSepId) {
    return std::nullopt;
  }
  std::vector<PieceId> ids{Vocabulary::kClsId};
  std::u32string segment;
  auto flush = [&] {
    if (segment.empty()) return;
    const TokenSequence seq = Encode(segment, vocab, EncodeMode::kMixed);
    ids.insert(ids.end(), seq.piece_ids.begin(), seq.piece_ids.end());
    segment.clear();
  };
  for (std::size_t p = 1; p + 1 < real; ++p) {
    const int32_t label = example.labels[p];
    const PieceId id = label != kIgnoreLabel ? label : example.input_ids[p];
    if (!vocab.Contains(id)) return std::nullopt;
    if (id == Vocabulary::kUnkId) {
      // UNK pieces have no surface; segment around them.
      flush();
      ids.push_back(Vocabulary::kUnkId);
    } else if (Vocabulary::IsSpecial(id)) {
      return std::nullopt;
    } else {
      segment += vocab.chars(id);
    }
  }
  flush();
  ids.push_back(Vocabulary::kSepId);
  return ids;
}

MaskingStats ComputeStats(const std::vector<fs::path>& paths,
                          const Vocabulary& vocab) {
  MaskingStats stats;
  ShardReader reader(paths);
  TrainingExample ex;
  while (reader.Next(&ex)) {
    ++stats.example_count;
    auto original = RecoverOriginal(ex, vocab);
    std::optional<std::vector<WordOutcome>> outcomes;
    if (original) outcomes = AlignExample(ex, *original, vocab);
    if (!outcomes) {
      ++stats.label_consistency_violations;
      continue;
    }
    std::size_t run = 0;
    auto close_run = [&] {
      if (run > 0) ++stats.span_length_histogram[std::min<std::size_t>(run, 4) - 1];
      run = 0;
    };
    for (std::size_t j = 0; j < outcomes->size(); ++j) {
      const WordOutcome o = (*outcomes)[j];
      if (o == WordOutcome::kSpecial) {
        close_run();
        continue;
      }
      ++stats.word_positions_total;
      if (o == WordOutcome::kUnmasked) {
        close_run();
        continue;
      }
      ++run;
      ++stats.masked_words;
      if (vocab.IsWord((*original)[j])) ++stats.masked_multichar_words;
      switch (o) {
        case WordOutcome::kMaskWord: ++stats.mask_count; break;
        case WordOutcome::kRandomWord: ++stats.random_count; break;
        case WordOutcome::kKeep: ++stats.keep_count; break;
        case WordOutcome::kExpandChars: ++stats.expanded_words; break;
        default: break;
      }
    }
    close_run();
  }
  if (stats.word_positions_total > 0) {
    stats.masked_fraction = static_cast<double>(stats.masked_words) /
                            static_cast<double>(stats.word_positions_total);
  }
  if (stats.masked_multichar_words > 0) {
    stats.expand_fraction_multichar =
        static_cast<double>(stats.expanded_words) /
        static_cast<double>(stats.masked_multichar_words);
  }
  return stats;
}

std::string StatsToJson(const MaskingStats& stats) {
  const json j{
      {"action_counts",
       {{"keep", stats.keep_count},
        {"mask", stats.mask_count},
        {"random", stats.random_count}}},
      {"example_count", stats.example_count},
      {"expand_fraction_multichar", stats.expand_fraction_multichar},
      {"expanded_words", stats.expanded_words},
      {"label_consistency_violations", stats.label_consistency_violations},
      {"masked_fraction", stats.masked_fraction},
      {"masked_multichar_words", stats.masked_multichar_words},
      {"masked_words", stats.masked_words},
      {"span_length_histogram", stats.span_length_histogram},
      {"word_positions_total", stats.word_positions_total},
  };
  return j.dump(2);
}

}  // namespace mixgran
