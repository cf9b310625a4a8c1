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

#ifndef MIXGRAN_TOKENIZER_H_
#define MIXGRAN_TOKENIZER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixgran/lattice.h"
#include "mixgran/textnorm.h"
#include "mixgran/vocab.h"

namespace mixgran {

enum class EncodeMode { kMixed, kCharOnly };

struct TokenSequence {
  std::vector<PieceId> piece_ids;
  std::vector<Span> spans;  // code point offsets into the source text
  EncodeMode mode = EncodeMode::kMixed;

  std::size_t size() const { return piece_ids.size(); }
  bool empty() const { return piece_ids.empty(); }
};

// Mixed: Viterbi segmentation over the whole vocabulary. CharOnly: one
// piece per character, UNK where no Char piece exists.
TokenSequence Encode(std::u32string_view text, const Vocabulary& vocab,
                     EncodeMode mode, double unk_penalty = -20.0);
inline TokenSequence Encode(const NormalizedText& text, const Vocabulary& vocab,
                            EncodeMode mode) {
  return Encode(text.chars, vocab, mode);
}

// Concatenated surfaces of the non-special pieces. Throws kUnknownId.
std::string Decode(std::span<const PieceId> ids, const Vocabulary& vocab);
inline std::string Decode(const TokenSequence& seq, const Vocabulary& vocab) {
  return Decode(seq.piece_ids, vocab);
}

// [CLS] + seq + [SEP]; the added spans are zero-width at either end.
// Throws kAlreadyHasSpecials if [CLS] or [SEP] is already present.
TokenSequence AddSpecials(const TokenSequence& seq);

}  // namespace mixgran

#endif  // MIXGRAN_TOKENIZER_H_
