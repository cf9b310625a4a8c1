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

#ifndef MIXGRAN_TESTS_SUPPORT_DESK_CORPUS_H_
#define MIXGRAN_TESTS_SUPPORT_DESK_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mixgran/textnorm.h"
#include "mixgran/vocab.h"

namespace mixgran::testing {

// Synthetic Chinese-like news text: sentences drawn from a Zipfian lexicon of
// 1-4 character words over a fixed CJK alphabet, with commas, full stops,
// occasional space-separated ASCII tokens, and the fixture sentences below
// mixed in. Fully determined by the options.
struct DeskCorpusOptions {
  std::size_t target_chars = 1'100'000;
  uint64_t seed = 20221;
  std::size_t alphabet_size = 2500;
  std::size_t lexicon_size = 12000;
  std::size_t min_words = 8;
  std::size_t max_words = 40;
  bool ascii_tokens = true;
};

std::vector<std::string> GenerateDeskCorpus(const DeskCorpusOptions& options);

// Fixture sentences that always appear in the desk corpus.
const std::vector<std::string>& FixtureSentences();

inline const std::string kWorkedExampleSentence = "使用语言模型来预测下一个词的概率";
inline const std::string kNaughtyKidSentence = "他是一个爱调皮捣蛋的孩子。";

std::vector<NormalizedText> NormalizeLines(const std::vector<std::string>& lines);
void WriteLines(const std::filesystem::path& path,
                const std::vector<std::string>& lines);

// A fresh empty directory under the system temp directory.
std::filesystem::path MakeTempDir(const std::string& tag);

// Vocabulary from (surface, log_prob) pairs; kinds follow the surfaces.
Vocabulary MakeVocab(const std::vector<std::pair<std::string, double>>& pieces);

// The a/b/c toy vocabulary: a -1.0, b -1.2, c -1.1, ab -1.5, bc -1.8.
Vocabulary ToyVocab();

}  // namespace mixgran::testing

#endif  // MIXGRAN_TESTS_SUPPORT_DESK_CORPUS_H_
