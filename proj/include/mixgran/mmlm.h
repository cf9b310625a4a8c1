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

#ifndef MIXGRAN_MMLM_H_
#define MIXGRAN_MMLM_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixgran/random.h"
#include "mixgran/textnorm.h"
#include "mixgran/tokenizer.h"
#include "mixgran/vocab.h"

namespace mixgran {

enum class Task { kMlm, kMmlm };

// Masking hyper-parameters. Defaults: 15% of words in 1-4-gram spans drawn
// 40/30/20/10, each masked word replaced by [MASK] 80%, a random piece 10%,
// kept 10%, and (MMLM only) 20% of masked words expanded to characters.
struct MaskingConfig {
  double mask_rate = 0.15;
  std::array<double, 3> action_probs = {0.8, 0.1, 0.1};
  double cmlm_rate = 0.20;
  std::array<double, 4> ngram_probs = {0.4, 0.3, 0.2, 0.1};
  std::size_t max_len = 512;
  uint64_t seed = 0;
  Task task = Task::kMmlm;

  // Throws kInvalidConfig naming the violated constraint.
  void Validate() const;
};

std::string_view TaskName(Task task);

struct WordSpan {
  std::size_t begin = 0;   // sequence position of the first word
  std::size_t length = 0;  // after clipping
  int drawn_n = 0;         // n-gram size drawn before clipping
};

enum class MaskAction { kMaskWord, kRandomWord, kKeep, kExpandChars };

struct MaskDecision {
  std::size_t position = 0;
  MaskAction action = MaskAction::kMaskWord;
  PieceId replacement = -1;  // kRandomWord only

  bool operator==(const MaskDecision&) const = default;
};

// Decisions sorted by position.
struct MaskingPlan {
  std::vector<MaskDecision> decisions;
};

inline constexpr int32_t kIgnoreLabel = -100;

struct TrainingExample {
  std::vector<int32_t> input_ids;
  std::vector<int32_t> labels;
  std::vector<uint8_t> attention;

  bool operator==(const TrainingExample&) const = default;
};

// Ordinary (non-special) pieces are the only masking targets.
inline bool IsMaskable(PieceId id) { return id >= Vocabulary::kNumSpecials; }

// Draws n-gram spans over maskable positions of `seq` until
// floor(mask_rate * words) positions are covered.
std::vector<WordSpan> SelectSpans(const TokenSequence& seq,
                                  const MaskingConfig& config, Rng& rng);

MaskingPlan AssignActions(std::span<const WordSpan> spans,
                          const TokenSequence& seq, const Vocabulary& vocab,
                          const MaskingConfig& config, Rng& rng);

// Throws kMissingCharPiece if an expanded word has a character without a
// Char piece, kInvalidConfig if the plan does not fit `seq`.
TrainingExample ApplyPlan(const TokenSequence& seq, const MaskingPlan& plan,
                          const Vocabulary& vocab, const MaskingConfig& config);

// Everything make_example computes, kept for inspection and statistics.
struct ExampleTrace {
  TokenSequence sequence;  // with specials, truncated to max_len
  std::vector<WordSpan> spans;
  MaskingPlan plan;
  TrainingExample example;
};

ExampleTrace TraceExample(std::u32string_view text, const Vocabulary& vocab,
                          const MaskingConfig& config, uint64_t ordinal);

// encode -> truncate -> add specials -> spans -> actions -> apply, with the
// random stream derived from (config.seed, ordinal) only.
TrainingExample MakeExample(std::u32string_view text, const Vocabulary& vocab,
                            const MaskingConfig& config, uint64_t ordinal);

enum class WordOutcome {
  kSpecial,
  kUnmasked,
  kMaskWord,
  kRandomWord,
  kKeep,
  kExpandChars,
};

// Matches an example against the original sequence (with specials) it was
// made from. Returns the outcome of every original position, or nullopt if
// the example is not a valid corruption of that sequence: labels must
// recover every predicted word, expansions must carry the word's characters
// in order, and the tail must be padding.
std::optional<std::vector<WordOutcome>> AlignExample(
    const TrainingExample& example, std::span<const PieceId> original,
    const Vocabulary& vocab);

}  // namespace mixgran

#endif  // MIXGRAN_MMLM_H_
