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

#include "mixgran/tokenizer.h"

#include <algorithm>

#include "mixgran/error.h"

namespace mixgran {

TokenSequence Encode(std::u32string_view text, const Vocabulary& vocab,
                     EncodeMode mode, double unk_penalty) {
  TokenSequence seq;
  seq.mode = mode;
  if (mode == EncodeMode::kCharOnly) {
    seq.piece_ids.reserve(text.size());
    seq.spans.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      seq.piece_ids.push_back(vocab.CharId(text[i]));
      seq.spans.push_back(
          {static_cast<uint32_t>(i), static_cast<uint32_t>(i + 1)});
    }
    return seq;
  }
  const LatticeOptions options{std::max<std::size_t>(1, vocab.max_piece_chars()),
                               unk_penalty};
  PathResult path = Viterbi(BuildLattice(text, vocab, options));
  seq.piece_ids = std::move(path.piece_ids);
  seq.spans = std::move(path.spans);
  return seq;
}

std::string Decode(std::span<const PieceId> ids, const Vocabulary& vocab) {
  std::string out;
  for (PieceId id : ids) {
    if (!vocab.Contains(id)) {
      throw Error(ErrorCode::kUnknownId,
                  "id " + std::to_string(id) + " outside vocabulary of size " +
                      std::to_string(vocab.size()));
    }
    if (Vocabulary::IsSpecial(id)) continue;
    out += vocab.piece(id).surface;
  }
  return out;
}

TokenSequence AddSpecials(const TokenSequence& seq) {
  for (PieceId id : seq.piece_ids) {
    if (id == Vocabulary::kClsId || id == Vocabulary::kSepId) {
      throw Error(ErrorCode::kAlreadyHasSpecials,
                  "sequence already contains [CLS] or [SEP]");
    }
  }
  const uint32_t end = seq.spans.empty() ? 0 : seq.spans.back().end;
  TokenSequence out;
  out.mode = seq.mode;
  out.piece_ids.reserve(seq.size() + 2);
  out.spans.reserve(seq.size() + 2);
  out.piece_ids.push_back(Vocabulary::kClsId);
  out.spans.push_back({0, 0});
  out.piece_ids.insert(out.piece_ids.end(), seq.piece_ids.begin(),
                       seq.piece_ids.end());
  out.spans.insert(out.spans.end(), seq.spans.begin(), seq.spans.end());
  out.piece_ids.push_back(Vocabulary::kSepId);
  out.spans.push_back({end, end});
  return out;
}

}  // namespace mixgran
