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

#include "mixgran/textnorm.h"

#include <unicode/bytestream.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>

#include "mixgran/error.h"
#include "mixgran/utf8.h"

namespace mixgran {
namespace {

const icu::Normalizer2& Nfkc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string("cannot load NFKC data: ") + u_errorName(status));
  }
  return *n;
}

bool IsSpace(char32_t c) {
  return c == U' ' || u_isUWhiteSpace(static_cast<UChar32>(c));
}

bool IsControl(char32_t c) {
  return u_charType(static_cast<UChar32>(c)) == U_CONTROL_CHAR;
}

// Maps whitespace to a single U+0020, drops controls, trims.
std::string CleanWhitespace(std::u32string_view chars) {
  std::string out;
  out.reserve(chars.size());
  bool pending_space = false;
  for (char32_t c : chars) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (IsControl(c)) continue;
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    utf8::Append(c, &out);
  }
  return out;
}

std::string ApplyNfkc(const std::string& in) {
  const icu::Normalizer2& nfkc = Nfkc();
  UErrorCode status = U_ZERO_ERROR;
  if (nfkc.isNormalizedUTF8(in, status) && U_SUCCESS(status)) return in;
  status = U_ZERO_ERROR;
  std::string out;
  icu::StringByteSink<std::string> sink(&out, static_cast<int32_t>(in.size()));
  nfkc.normalizeUTF8(0, in, sink, nullptr, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kInvalidEncoding,
                std::string("NFKC failed: ") + u_errorName(status));
  }
  return out;
}

}  // namespace

std::string NormalizedText::Utf8() const { return utf8::Encode(chars); }

NormalizedText Normalize(std::string_view raw, std::size_t source_line) {
  auto decoded = utf8::Decode(raw);
  if (!decoded) {
    throw Error(ErrorCode::kInvalidEncoding, "ill-formed UTF-8",
                source_line == 0 ? std::nullopt
                                 : std::optional<std::size_t>(source_line));
  }
  // Removing a control character can join a base with a combining mark, and
  // NFKC can produce new spaces, so iterate to a fixed point. Two passes
  // suffice in practice; the bound only guards against surprises.
  std::string current = CleanWhitespace(*decoded);
  for (int pass = 0; pass < 8; ++pass) {
    std::string next = CleanWhitespace(*utf8::Decode(ApplyNfkc(current)));
    if (next == current) break;
    current = std::move(next);
  }
  NormalizedText text;
  text.chars = *utf8::Decode(current);
  text.source_line = source_line;
  return text;
}

CorpusReader::CorpusReader(const std::filesystem::path& path)
    : path_(path), in_(path, std::ios::binary) {
  if (!in_) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  }
}

bool CorpusReader::Next(NormalizedText* text) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_number_ == 1 && line.starts_with("\xEF\xBB\xBF")) {
      line.erase(0, 3);
    }
    try {
      *text = Normalize(line, line_number_);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInvalidEncoding) throw;
      throw Error(e.code(), path_.string() + ": ill-formed UTF-8",
                  line_number_);
    }
    if (!text->empty()) return true;
  }
  if (in_.bad()) {
    throw Error(ErrorCode::kIoFailure, "read failed: " + path_.string(),
                line_number_);
  }
  return false;
}

std::vector<NormalizedText> ReadCorpus(const std::filesystem::path& path) {
  CorpusReader reader(path);
  std::vector<NormalizedText> lines;
  NormalizedText text;
  while (reader.Next(&text)) lines.push_back(std::move(text));
  return lines;
}

}  // namespace mixgran
