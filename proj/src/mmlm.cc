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

#include "mixgran/mmlm.h"

#include <algorithm>
#include <cmath>

#include "mixgran/error.h"

namespace mixgran {
namespace {

void CheckDistribution(std::span<const double> probs, const char* name) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || std::isinf(p)) {
      throw Error(ErrorCode::kInvalidConfig,
                  std::string(name) + " must be nonnegative");
    }
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string(name) + " must sum to 1");
  }
}

}  // namespace

void MaskingConfig::Validate() const {
  CheckDistribution(action_probs, "action_probs");
  CheckDistribution(ngram_probs, "ngram_probs");
  if (!(mask_rate >= 0.0 && mask_rate <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "mask_rate must lie in [0, 1]");
  }
  if (!(cmlm_rate >= 0.0 && cmlm_rate <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "cmlm_rate must lie in [0, 1]");
  }
  if (max_len < 2) {
    throw Error(ErrorCode::kInvalidConfig,
                "max_len must leave room for [CLS] and [SEP]");
  }
}

std::string_view TaskName(Task task) {
  return task == Task::kMlm ? "mlm" : "mmlm";
}

std::vector<WordSpan> SelectSpans(const TokenSequence& seq,
                                  const MaskingConfig& config, Rng& rng) {
  const std::size_t n = seq.size();
  std::vector<std::size_t> open;  // maskable, not yet covered
  for (std::size_t i = 0; i < n; ++i) {
    if (IsMaskable(seq.piece_ids[i])) open.push_back(i);
  }
  const auto budget = static_cast<std::size_t>(
      std::floor(config.mask_rate * static_cast<double>(open.size()) + 1e-9));

  std::vector<bool> covered(n, false);
  std::vector<WordSpan> spans;
  std::size_t covered_count = 0;
  while (covered_count < budget && !open.empty()) {
    const int drawn_n = static_cast<int>(rng.Categorical(config.ngram_probs)) + 1;
    const std::size_t start = open[rng.UniformInt(open.size())];
    std::size_t length = 0;
    while (length < static_cast<std::size_t>(drawn_n) && start + length < n &&
           IsMaskable(seq.piece_ids[start + length]) &&
           !covered[start + length]) {
      covered[start + length] = true;
      ++length;
    }
    covered_count += length;
    spans.push_back({start, length, drawn_n});
    std::erase_if(open, [&](std::size_t i) { return covered[i]; });
  }
  return spans;
}

MaskingPlan AssignActions(std::span<const WordSpan> spans,
                          const TokenSequence& seq, const Vocabulary& vocab,
                          const MaskingConfig& config, Rng& rng) {
  std::vector<std::size_t> positions;
  for (const WordSpan& span : spans) {
    for (std::size_t i = 0; i < span.length; ++i) {
      positions.push_back(span.begin + i);
    }
  }
  std::sort(positions.begin(), positions.end());

  const uint64_t random_pool = vocab.size() - Vocabulary::kNumSpecials;
  MaskingPlan plan;
  plan.decisions.reserve(positions.size());
  for (std::size_t pos : positions) {
    const PieceId id = seq.piece_ids[pos];
    MaskDecision d;
    d.position = pos;
    if (config.task == Task::kMmlm && rng.Uniform() < config.cmlm_rate &&
        vocab.chars(id).size() >= 2) {
      d.action = MaskAction::kExpandChars;
      plan.decisions.push_back(d);
      continue;
    }
    switch (rng.Categorical(config.action_probs)) {
      case 0:
        d.action = MaskAction::kMaskWord;
        break;
      case 1:
        d.action = MaskAction::kRandomWord;
        d.replacement = static_cast<PieceId>(Vocabulary::kNumSpecials +
                                             rng.UniformInt(random_pool));
        break;
      default:
        d.action = MaskAction::kKeep;
        break;
    }
    plan.decisions.push_back(d);
  }
  return plan;
}

TrainingExample ApplyPlan(const TokenSequence& seq, const MaskingPlan& plan,
                          const Vocabulary& vocab,
                          const MaskingConfig& config) {
  if (seq.size() > config.max_len) {
    throw Error(ErrorCode::kInvalidConfig,
                "sequence of " + std::to_string(seq.size()) +
                    " tokens exceeds max_len " + std::to_string(config.max_len));
  }
  TrainingExample ex;
  ex.input_ids.reserve(config.max_len);
  ex.labels.reserve(config.max_len);
  std::size_t real_len = seq.size();
  auto next = plan.decisions.begin();
  for (std::size_t pos = 0; pos < seq.size(); ++pos) {
    const PieceId id = seq.piece_ids[pos];
    if (next == plan.decisions.end() || next->position != pos) {
      ex.input_ids.push_back(id);
      ex.labels.push_back(kIgnoreLabel);
      continue;
    }
    const MaskDecision& d = *next++;
    if (!IsMaskable(id)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "plan targets special token at position " +
                      std::to_string(pos));
    }
    MaskAction action = d.action;
    if (action == MaskAction::kExpandChars) {
      const std::u32string& chars = vocab.chars(id);
      if (chars.size() < 2 || real_len + chars.size() - 1 > config.max_len) {
        action = MaskAction::kMaskWord;
      } else {
        for (char32_t c : chars) {
          const PieceId cid = vocab.CharId(c);
          if (cid == Vocabulary::kUnkId) {
            throw Error(ErrorCode::kMissingCharPiece,
                        "no Char piece for a character of '" +
                            vocab.piece(id).surface + "'");
          }
          ex.input_ids.push_back(Vocabulary::kMaskId);
          ex.labels.push_back(cid);
        }
        real_len += chars.size() - 1;
        continue;
      }
    }
    switch (action) {
      case MaskAction::kMaskWord:
        ex.input_ids.push_back(Vocabulary::kMaskId);
        break;
      case MaskAction::kRandomWord:
        if (!vocab.Contains(d.replacement)) {
          throw Error(ErrorCode::kUnknownId,
                      "replacement id " + std::to_string(d.replacement));
        }
        ex.input_ids.push_back(d.replacement);
        break;
      default:
        ex.input_ids.push_back(id);
        break;
    }
    ex.labels.push_back(id);
  }
  if (next != plan.decisions.end()) {
    throw Error(ErrorCode::kInvalidConfig,
                "plan is unsorted or references positions beyond the sequence");
  }
  ex.attention.assign(ex.input_ids.size(), 1);
  ex.input_ids.resize(config.max_len, Vocabulary::kPadId);
  ex.labels.resize(config.max_len, kIgnoreLabel);
  ex.attention.resize(config.max_len, 0);
  return ex;
}

ExampleTrace TraceExample(std::u32string_view text, const Vocabulary& vocab,
                          const MaskingConfig& config, uint64_t ordinal) {
  config.Validate();
  ExampleTrace trace;
  TokenSequence seq = Encode(text, vocab, EncodeMode::kMixed);
  const std::size_t room = config.max_len - 2;
  if (seq.size() > room) {
    seq.piece_ids.resize(room);
    seq.spans.resize(room);
  }
  trace.sequence = AddSpecials(seq);
  Rng rng = Rng::ForSequence(config.seed, ordinal);
  trace.spans = SelectSpans(trace.sequence, config, rng);
  trace.plan = AssignActions(trace.spans, trace.sequence, vocab, config, rng);
  trace.example = ApplyPlan(trace.sequence, trace.plan, vocab, config);
  return trace;
}

TrainingExample MakeExample(std::u32string_view text, const Vocabulary& vocab,
                            const MaskingConfig& config, uint64_t ordinal) {
  return TraceExample(text, vocab, config, ordinal).example;
}

std::optional<std::vector<WordOutcome>> AlignExample(
    const TrainingExample& example, std::span<const PieceId> original,
    const Vocabulary& vocab) {
  const std::size_t len = example.input_ids.size();
  if (example.labels.size() != len || example.attention.size() != len) {
    return std::nullopt;
  }
  std::vector<WordOutcome> outcomes;
  outcomes.reserve(original.size());
  std::size_t p = 0;
  for (PieceId orig : original) {
    if (p >= len || example.attention[p] != 1) return std::nullopt;
    const int32_t input = example.input_ids[p];
    const int32_t label = example.labels[p];
    if (!IsMaskable(orig)) {
      if (input != orig || label != kIgnoreLabel) return std::nullopt;
      outcomes.push_back(WordOutcome::kSpecial);
      ++p;
      continue;
    }
    if (label == kIgnoreLabel) {
      if (input != orig) return std::nullopt;
      outcomes.push_back(WordOutcome::kUnmasked);
      ++p;
      continue;
    }
    if (label == orig) {
      if (input == Vocabulary::kMaskId) {
        outcomes.push_back(WordOutcome::kMaskWord);
      } else if (input == orig) {
        outcomes.push_back(WordOutcome::kKeep);
      } else if (IsMaskable(input) && vocab.Contains(input)) {
        outcomes.push_back(WordOutcome::kRandomWord);
      } else {
        return std::nullopt;
      }
      ++p;
      continue;
    }
    if (!vocab.Contains(orig) || !vocab.IsWord(orig)) return std::nullopt;
    const std::u32string& chars = vocab.chars(orig);
    if (p + chars.size() > len) return std::nullopt;
    for (std::size_t t = 0; t < chars.size(); ++t) {
      const PieceId cid = vocab.CharId(chars[t]);
      if (cid == Vocabulary::kUnkId || example.attention[p + t] != 1 ||
          example.input_ids[p + t] != Vocabulary::kMaskId ||
          example.labels[p + t] != cid) {
        return std::nullopt;
      }
    }
    outcomes.push_back(WordOutcome::kExpandChars);
    p += chars.size();
  }
  for (; p < len; ++p) {
    if (example.attention[p] != 0 || example.input_ids[p] != Vocabulary::kPadId ||
        example.labels[p] != kIgnoreLabel) {
      return std::nullopt;
    }
  }
  return outcomes;
}

}  // namespace mixgran
