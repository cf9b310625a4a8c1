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

#ifndef MIXGRAN_DATASET_H_
#define MIXGRAN_DATASET_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "mixgran/mmlm.h"
#include "mixgran/vocab.h"

namespace mixgran {

inline constexpr int kShardFormatVersion = 1;

// Shard files are JSON lines: one header object
//   {"example_count":N,"fingerprint":"<16 hex>","format_version":1,"max_len":L}
// followed by N examples
//   {"input_ids":[...],"labels":[...],"attention":[...]}
struct ShardHeader {
  int format_version = kShardFormatVersion;
  std::string fingerprint;
  std::size_t max_len = 0;
  std::size_t example_count = 0;
};

struct Shard {
  std::filesystem::path path;
  std::size_t example_count = 0;
  std::string fingerprint;
};

// Canonical (sorted-key, 17-digit) JSON of a masking configuration.
std::string CanonicalConfigJson(const MaskingConfig& config);

// 64-bit hex digest of the canonical config plus the vocabulary file digest.
std::string DatasetFingerprint(const MaskingConfig& config,
                               std::string_view vocab_sha256);

std::string ShardFileName(std::size_t index);

// Buffers up to `shard_size` examples and writes shard-%05d.jsonl files in
// input order.
class ShardWriter {
 public:
  ShardWriter(std::filesystem::path out_dir, std::size_t shard_size,
              std::string fingerprint, std::size_t max_len);

  void Add(const TrainingExample& example);
  std::vector<Shard> Finish();

 private:
  void Flush();

  std::filesystem::path out_dir_;
  std::size_t shard_size_;
  std::string fingerprint_;
  std::size_t max_len_;
  std::vector<std::string> pending_;
  std::vector<Shard> shards_;
};

std::vector<Shard> WriteShards(std::span<const TrainingExample> examples,
                               const std::filesystem::path& out_dir,
                               std::size_t shard_size,
                               const std::string& fingerprint,
                               std::size_t max_len);

// Yields examples in shard order, then line order. Every shard must carry the
// fingerprint of the first one.
class ShardReader {
 public:
  explicit ShardReader(std::vector<std::filesystem::path> paths);

  bool Next(TrainingExample* example);
  const ShardHeader& header() const { return header_; }

 private:
  bool OpenNext();

  std::vector<std::filesystem::path> paths_;
  std::size_t next_path_ = 0;
  std::ifstream in_;
  std::filesystem::path current_;
  std::size_t line_ = 0;
  std::size_t read_in_shard_ = 0;
  ShardHeader header_;
  std::string fingerprint_;
};

std::vector<TrainingExample> ReadShards(
    const std::vector<std::filesystem::path>& paths);

struct DatasetInfo {
  std::vector<Shard> shards;
  std::string fingerprint;
  std::size_t total_examples = 0;
};

// manifest.json: config, fingerprint, format version, shard list, vocabulary.
void WriteManifest(const std::filesystem::path& out_dir, const DatasetInfo& info,
                   const MaskingConfig& config,
                   const std::filesystem::path& vocab_path,
                   const std::string& vocab_sha256);

// Shard paths of a dataset directory (via its manifest), or the path itself
// if it names a shard file.
std::vector<std::filesystem::path> ListShards(const std::filesystem::path& path);

// Vocabulary path recorded in a dataset manifest, if any.
std::filesystem::path ManifestVocabPath(const std::filesystem::path& dataset_dir);

struct BuildOptions {
  MaskingConfig masking;
  std::size_t shard_size = 10000;
  int workers = 1;
};

// Corpus file -> shards + manifest under `out_dir`.
DatasetInfo BuildDataset(const std::filesystem::path& corpus_path,
                         const std::filesystem::path& vocab_path,
                         const std::filesystem::path& out_dir,
                         const BuildOptions& options);

struct MaskingStats {
  std::size_t example_count = 0;
  std::size_t word_positions_total = 0;
  std::size_t masked_words = 0;
  double masked_fraction = 0.0;
  std::size_t mask_count = 0;
  std::size_t random_count = 0;
  std::size_t keep_count = 0;
  std::size_t masked_multichar_words = 0;
  std::size_t expanded_words = 0;
  double expand_fraction_multichar = 0.0;
  // Maximal runs of consecutive masked words of length 1, 2, 3 and >= 4.
  std::array<std::size_t, 4> span_length_histogram{};
  std::size_t label_consistency_violations = 0;

  bool operator==(const MaskingStats&) const = default;
};

// Recomputes the masking statistics from serialized examples alone. The
// original sequence of each example is recovered by substituting labels,
// joining the surfaces and re-encoding; examples that do not align with it
// count as label-consistency violations.
MaskingStats ComputeStats(const std::vector<std::filesystem::path>& paths,
                          const Vocabulary& vocab);

// Recovers the original token sequence (with [CLS]/[SEP]) an example was
// made from, or nullopt if its real region is malformed.
std::optional<std::vector<PieceId>> RecoverOriginal(
    const TrainingExample& example, const Vocabulary& vocab);

std::string StatsToJson(const MaskingStats& stats);

}  // namespace mixgran

#endif  // MIXGRAN_DATASET_H_
