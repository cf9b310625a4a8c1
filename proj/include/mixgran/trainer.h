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

#ifndef MIXGRAN_TRAINER_H_
#define MIXGRAN_TRAINER_H_

#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mixgran/lattice.h"
#include "mixgran/textnorm.h"
#include "mixgran/vocab.h"

namespace mixgran {

struct TrainerConfig {
  std::size_t target_size = 40000;
  std::size_t seed_size = 0;  // 0 means 4 * target_size
  std::size_t max_piece_len = 8;
  int em_iters_per_round = 2;
  double shrink_keep_ratio = 0.75;
  double char_coverage = 1.0;
  uint64_t seed = 0;
  double unk_penalty = -20.0;
  int num_threads = 0;
  std::function<void(const std::string&)> on_progress;

  std::size_t EffectiveSeedSize() const {
    return seed_size == 0 ? 4 * target_size : seed_size;
  }
  LatticeOptions lattice_options() const {
    return {max_piece_len, unk_penalty};
  }
  // Throws kInvalidConfig.
  void Validate() const;
};

struct Candidate {
  std::string surface;  // UTF-8
  double count = 0.0;
  double log_prob = 0.0;
};

// Single characters first, then multi-character substrings, each group in
// rank order.
using CandidateSet = std::vector<Candidate>;

// Log-probability assigned to pieces whose expected count underflows to 0.
inline constexpr double kMinLogProb = -1000.0;

// Characters whose cumulative frequency mass reaches char_coverage (most
// frequent first), plus the top substrings of length 2..max_piece_len by
// count * length. Substrings never contain a space, an uncovered character
// or special-token text.
CandidateSet SeedVocabulary(std::span<const NormalizedText> corpus,
                            const TrainerConfig& config);

// Specials followed by the candidates, in order. Ids are index + 5.
Vocabulary TrainingVocabulary(const CandidateSet& candidates);

// One EM iteration. Updates log_probs in place and returns the corpus
// log-likelihood before the update.
double EmStep(std::span<const NormalizedText> corpus, CandidateSet* candidates,
              const TrainerConfig& config);

// Estimated corpus log-likelihood loss of removing each candidate: its
// Viterbi usage times the score drop of rerouting one usage through the best
// segmentation of its surface without it. Protected entries get +inf.
std::vector<double> PruneLosses(std::span<const NormalizedText> corpus,
                                const CandidateSet& candidates,
                                const std::set<std::string>& protected_set,
                                const TrainerConfig& config);

// Keeps the protected entries plus the max(ceil(keep_ratio * U), min_keep)
// unprotected entries with the largest loss, U being the unprotected count.
CandidateSet Prune(std::span<const NormalizedText> corpus,
                   const CandidateSet& candidates, double keep_ratio,
                   const std::set<std::string>& protected_set,
                   const TrainerConfig& config, std::size_t min_keep = 0);

// Full unigram training loop ending in BuildFinal.
Vocabulary Train(std::span<const NormalizedText> corpus,
                 const TrainerConfig& config);

// Specials plus covered characters only, with relative-frequency
// probabilities; target_size is ignored.
Vocabulary TrainCharVocabulary(std::span<const NormalizedText> corpus,
                               const TrainerConfig& config);

}  // namespace mixgran

#endif  // MIXGRAN_TRAINER_H_
