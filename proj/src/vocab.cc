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

#include "mixgran/vocab.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "mixgran/error.h"
#include "mixgran/utf8.h"

namespace mixgran {
namespace {

std::optional<std::size_t> LineOf(std::size_t index, bool with_lines) {
  if (!with_lines) return std::nullopt;
  return index + 1;
}

// Shared validation; `with_lines` attaches 1-based line numbers (== id + 1)
// to errors, which is what the TSV loader wants.
void Validate(const std::vector<Piece>& pieces, bool with_lines) {
  if (pieces.size() < Vocabulary::kNumSpecials) {
    throw Error(ErrorCode::kNonContiguousSpecials,
                "vocabulary must start with the five special tokens");
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (i < Vocabulary::kNumSpecials) {
      if (p.kind != PieceKind::kSpecial ||
          p.surface != Vocabulary::kSpecialSurfaces[i] || p.log_prob != 0.0) {
        throw Error(ErrorCode::kNonContiguousSpecials,
                    "expected " + std::string(Vocabulary::kSpecialSurfaces[i]) +
                        " with log_prob 0 at id " + std::to_string(i),
                    LineOf(i, with_lines));
      }
      continue;
    }
    if (p.kind == PieceKind::kSpecial) {
      throw Error(ErrorCode::kNonContiguousSpecials,
                  "special piece '" + p.surface + "' outside ids 0-4",
                  LineOf(i, with_lines));
    }
    if (p.surface.empty()) {
      throw Error(ErrorCode::kFormatError, "empty surface",
                  LineOf(i, with_lines));
    }
    if (!utf8::Decode(p.surface)) {
      throw Error(ErrorCode::kInvalidEncoding, "surface is not UTF-8",
                  LineOf(i, with_lines));
    }
    if (KindForSurface(p.surface) != p.kind) {
      throw Error(ErrorCode::kFormatError,
                  "kind " + std::string(PieceKindName(p.kind)) +
                      " does not match surface '" + p.surface + "'",
                  LineOf(i, with_lines));
    }
    if (!(p.log_prob <= 0.0) || std::isinf(p.log_prob)) {
      throw Error(ErrorCode::kFormatError,
                  "log_prob must be finite and <= 0 for '" + p.surface + "'",
                  LineOf(i, with_lines));
    }
  }
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::optional<PieceKind> ParseKind(std::string_view s) {
  if (s == "SPECIAL") return PieceKind::kSpecial;
  if (s == "CHAR") return PieceKind::kChar;
  if (s == "WORD") return PieceKind::kWord;
  return std::nullopt;
}

}  // namespace

std::string_view PieceKindName(PieceKind kind) {
  switch (kind) {
    case PieceKind::kSpecial: return "SPECIAL";
    case PieceKind::kChar: return "CHAR";
    case PieceKind::kWord: return "WORD";
  }
  return "?";
}

PieceKind KindForSurface(std::string_view surface) {
  return utf8::CharCount(surface) == 1 ? PieceKind::kChar : PieceKind::kWord;
}

PieceTrie::PieceTrie() : terminal_(1, -1) {}

void PieceTrie::Insert(std::u32string_view key, PieceId id) {
  int32_t node = kRoot;
  for (char32_t c : key) {
    auto [it, inserted] =
        children_.try_emplace(Key(node, c), static_cast<int32_t>(terminal_.size()));
    if (inserted) terminal_.push_back(-1);
    node = it->second;
  }
  terminal_[node] = id;
}

std::vector<Piece> Vocabulary::SpecialPieces() {
  std::vector<Piece> specials;
  for (std::string_view s : kSpecialSurfaces) {
    specials.push_back({std::string(s), 0.0, PieceKind::kSpecial});
  }
  return specials;
}

Vocabulary::Vocabulary() : Vocabulary(SpecialPieces()) {}

Vocabulary::Vocabulary(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  Validate(pieces_, /*with_lines=*/false);
  chars_.reserve(pieces_.size());
  id_of_.reserve(pieces_.size());
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const PieceId id = static_cast<PieceId>(i);
    const Piece& p = pieces_[i];
    chars_.push_back(*utf8::Decode(p.surface));
    if (!id_of_.emplace(p.surface, id).second) {
      throw Error(ErrorCode::kDuplicateSurface,
                  "duplicate surface '" + p.surface + "' at id " +
                      std::to_string(i));
    }
    if (IsSpecial(id)) continue;
    trie_.Insert(chars_.back(), id);
    max_piece_chars_ = std::max(max_piece_chars_, chars_.back().size());
    if (p.kind == PieceKind::kChar) {
      char_ids_.emplace(chars_.back()[0], id);
    } else {
      has_word_pieces_ = true;
    }
  }
}

std::optional<PieceId> Vocabulary::Find(std::string_view surface) const {
  auto it = id_of_.find(std::string(surface));
  if (it == id_of_.end()) return std::nullopt;
  return it->second;
}

bool RanksBefore(const Piece& a, const Piece& b) {
  if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
  const std::size_t la = utf8::CharCount(a.surface);
  const std::size_t lb = utf8::CharCount(b.surface);
  if (la != lb) return la < lb;
  // UTF-8 byte order coincides with code point order.
  return a.surface < b.surface;
}

Vocabulary BuildFinal(const std::vector<Piece>& candidates,
                      std::size_t target_size,
                      const std::set<char32_t>& required_chars) {
  if (target_size < Vocabulary::kNumSpecials + required_chars.size()) {
    throw Error(ErrorCode::kTargetTooSmall,
                "target size " + std::to_string(target_size) +
                    " cannot hold 5 specials and " +
                    std::to_string(required_chars.size()) +
                    " required characters");
  }

  std::set<std::string_view> seen;
  std::vector<const Piece*> required;
  std::vector<const Piece*> optional;
  for (const Piece& p : candidates) {
    if (p.kind == PieceKind::kSpecial) {
      throw Error(ErrorCode::kFormatError,
                  "special piece '" + p.surface + "' among candidates");
    }
    if (!seen.insert(p.surface).second) {
      throw Error(ErrorCode::kDuplicateSurface,
                  "duplicate candidate '" + p.surface + "'");
    }
    bool is_required = false;
    if (p.kind == PieceKind::kChar) {
      auto chars = utf8::Decode(p.surface);
      is_required = chars && chars->size() == 1 &&
                    required_chars.count((*chars)[0]) > 0;
    }
    (is_required ? required : optional).push_back(&p);
  }
  if (required.size() != required_chars.size()) {
    for (char32_t c : required_chars) {
      std::string s;
      utf8::Append(c, &s);
      if (!seen.count(s)) {
        throw Error(ErrorCode::kMissingRequiredChar,
                    "no candidate for required character '" + s + "'");
      }
    }
  }

  auto by_rank = [](const Piece* a, const Piece* b) {
    return RanksBefore(*a, *b);
  };
  std::sort(optional.begin(), optional.end(), by_rank);
  const std::size_t room =
      target_size - Vocabulary::kNumSpecials - required.size();
  if (optional.size() > room) optional.resize(room);

  std::vector<const Piece*> kept = std::move(required);
  kept.insert(kept.end(), optional.begin(), optional.end());
  std::sort(kept.begin(), kept.end(), by_rank);

  double max_lp = -std::numeric_limits<double>::infinity();
  for (const Piece* p : kept) max_lp = std::max(max_lp, p->log_prob);
  double sum = 0.0;
  for (const Piece* p : kept) sum += std::exp(p->log_prob - max_lp);
  const double log_z = max_lp + std::log(sum);

  std::vector<Piece> pieces = Vocabulary::SpecialPieces();
  pieces.reserve(Vocabulary::kNumSpecials + kept.size());
  for (const Piece* p : kept) {
    Piece q = *p;
    q.log_prob = std::min(0.0, p->log_prob - log_z);
    pieces.push_back(std::move(q));
  }
  return Vocabulary(std::move(pieces));
}

std::string SerializeVocabulary(const Vocabulary& vocab) {
  std::string out;
  char buf[64];
  for (const Piece& p : vocab.pieces()) {
    out += p.surface;
    out += '\t';
    auto res = std::to_chars(buf, buf + sizeof(buf), p.log_prob,
                             std::chars_format::general, 17);
    out.append(buf, res.ptr);
    out += '\t';
    out += PieceKindName(p.kind);
    out += '\n';
  }
  return out;
}

Vocabulary ParseVocabulary(std::string_view contents) {
  std::vector<Piece> pieces;
  std::unordered_map<std::string_view, std::size_t> first_line;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    std::string_view line = contents.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? contents.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto fields = SplitTabs(line);
    if (fields.size() != 3) {
      throw Error(ErrorCode::kFormatError,
                  "expected 3 tab-separated fields, got " +
                      std::to_string(fields.size()),
                  line_no);
    }
    Piece p;
    p.surface = std::string(fields[0]);
    const std::string_view num = fields[1];
    auto res = std::from_chars(num.data(), num.data() + num.size(), p.log_prob);
    if (res.ec != std::errc() || res.ptr != num.data() + num.size()) {
      throw Error(ErrorCode::kFormatError,
                  "bad log_prob '" + std::string(num) + "'", line_no);
    }
    auto kind = ParseKind(fields[2]);
    if (!kind) {
      throw Error(ErrorCode::kFormatError,
                  "bad kind '" + std::string(fields[2]) + "'", line_no);
    }
    p.kind = *kind;
    if (auto [it, ok] = first_line.emplace(fields[0], line_no); !ok) {
      throw Error(ErrorCode::kDuplicateSurface,
                  "surface '" + p.surface + "' already on line " +
                      std::to_string(it->second),
                  line_no);
    }
    pieces.push_back(std::move(p));
  }
  Validate(pieces, /*with_lines=*/true);
  return Vocabulary(std::move(pieces));
}

void SaveVocabulary(const Vocabulary& vocab, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  const std::string data = SerializeVocabulary(vocab);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed: " + path.string());
}

Vocabulary LoadVocabulary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseVocabulary(ss.str());
}

}  // namespace mixgran
