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

#ifndef MIXGRAN_TEXTNORM_H_
#define MIXGRAN_TEXTNORM_H_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace mixgran {

// A line of text after normalization. Contains no control characters, no
// runs of spaces, no leading/trailing spaces, and is NFKC-stable.
struct NormalizedText {
  std::u32string chars;
  std::size_t source_line = 0;

  std::string Utf8() const;
  std::size_t size() const { return chars.size(); }
  bool empty() const { return chars.empty(); }
};

// NFKC, whitespace mapped to U+0020 and collapsed, control characters
// removed, trimmed. Throws Error(kInvalidEncoding) on ill-formed UTF-8.
NormalizedText Normalize(std::string_view raw, std::size_t source_line = 0);

// Streams the non-empty normalized lines of a newline-delimited file.
class CorpusReader {
 public:
  explicit CorpusReader(const std::filesystem::path& path);

  // Returns false at end of file.
  bool Next(NormalizedText* text);

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t line_number_ = 0;
};

std::vector<NormalizedText> ReadCorpus(const std::filesystem::path& path);

}  // namespace mixgran

#endif  // MIXGRAN_TEXTNORM_H_
