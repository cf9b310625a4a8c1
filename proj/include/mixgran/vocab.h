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

#ifndef MIXGRAN_VOCAB_H_
#define MIXGRAN_VOCAB_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mixgran {

using PieceId = int32_t;

enum class PieceKind { kSpecial, kChar, kWord };

std::string_view PieceKindName(PieceKind kind);

struct Piece {
  std::string surface;  // UTF-8
  double log_prob = 0.0;
  PieceKind kind = PieceKind::kWord;

  bool operator==(const Piece&) const = default;
};

// kChar for a single scalar value, kWord otherwise.
PieceKind KindForSurface(std::string_view surface);

// Prefix trie over code points of the non-special pieces.
class PieceTrie {
 public:
  static constexpr int32_t kRoot = 0;
  static constexpr int32_t kNone = -1;

  PieceTrie();

  void Insert(std::u32string_view key, PieceId id);

  // Child of `node` along `c`, or kNone.
  int32_t Step(int32_t node, char32_t c) const {
    auto it = children_.find(Key(node, c));
    return it == children_.end() ? kNone : it->second;
  }

  // Piece terminating at `node`, or -1.
  PieceId PieceAt(int32_t node) const { return terminal_[node]; }

 private:
  static uint64_t Key(int32_t node, char32_t c) {
    return (static_cast<uint64_t>(node) << 21) | static_cast<uint64_t>(c);
  }
  struct KeyHash {
    std::size_t operator()(uint64_t x) const {
      x ^= x >> 33;
      x *= 0xff51afd7ed558ccdULL;
      x ^= x >> 33;
      return static_cast<std::size_t>(x);
    }
  };

  std::vector<PieceId> terminal_;
  std::unordered_map<uint64_t, int32_t, KeyHash> children_;
};

// The mixed-granularity vocabulary: five specials at ids 0-4, then single
// characters and multi-character words. Immutable once constructed.
class Vocabulary {
 public:
  static constexpr PieceId kPadId = 0;
  static constexpr PieceId kUnkId = 1;
  static constexpr PieceId kClsId = 2;
  static constexpr PieceId kSepId = 3;
  static constexpr PieceId kMaskId = 4;
  static constexpr int kNumSpecials = 5;

  static constexpr std::array<std::string_view, kNumSpecials>
      kSpecialSurfaces = {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"};

  static std::vector<Piece> SpecialPieces();

  // Specials only.
  Vocabulary();

  // Validates structure: specials in place, unique non-empty surfaces,
  // kinds consistent with surfaces, log_prob <= 0. Does not renormalize.
  explicit Vocabulary(std::vector<Piece> pieces);

  std::size_t size() const { return pieces_.size(); }
  const Piece& piece(PieceId id) const { return pieces_[id]; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::u32string& chars(PieceId id) const { return chars_[id]; }

  std::optional<PieceId> Find(std::string_view surface) const;

  // Char piece for `c`, or kUnkId.
  PieceId CharId(char32_t c) const {
    auto it = char_ids_.find(c);
    return it == char_ids_.end() ? kUnkId : it->second;
  }

  bool Contains(PieceId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < pieces_.size();
  }
  static bool IsSpecial(PieceId id) { return id >= 0 && id < kNumSpecials; }
  bool IsWord(PieceId id) const {
    return pieces_[id].kind == PieceKind::kWord;
  }

  // Longest non-special surface, in characters.
  std::size_t max_piece_chars() const { return max_piece_chars_; }
  bool has_word_pieces() const { return has_word_pieces_; }

  const PieceTrie& trie() const { return trie_; }

  bool operator==(const Vocabulary& other) const {
    return pieces_ == other.pieces_;
  }

 private:
  std::vector<Piece> pieces_;
  std::vector<std::u32string> chars_;
  std::unordered_map<std::string, PieceId> id_of_;
  std::unordered_map<char32_t, PieceId> char_ids_;
  PieceTrie trie_;
  std::size_t max_piece_chars_ = 0;
  bool has_word_pieces_ = false;
};

// Selects the final vocabulary: specials, every required character, then the
// highest-probability remaining candidates until `target_size` pieces (or
// the candidates run out). Ties go to the shorter surface, then the smaller
// code point sequence. Retained probabilities are renormalized to sum to 1.
Vocabulary BuildFinal(const std::vector<Piece>& candidates,
                      std::size_t target_size,
                      const std::set<char32_t>& required_chars);

// Total order used for ranking pieces: higher log_prob first, then shorter,
// then lexicographic by code point.
bool RanksBefore(const Piece& a, const Piece& b);

// TSV format: surface<TAB>log_prob<TAB>kind, one piece per line, line order
// defines ids.
std::string SerializeVocabulary(const Vocabulary& vocab);
Vocabulary ParseVocabulary(std::string_view contents);
void SaveVocabulary(const Vocabulary& vocab, const std::filesystem::path& path);
Vocabulary LoadVocabulary(const std::filesystem::path& path);

}  // namespace mixgran

#endif  // MIXGRAN_VOCAB_H_
