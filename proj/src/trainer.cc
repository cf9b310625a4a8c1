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

#include "mixgran/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "mixgran/error.h"
#include "mixgran/kernels.h"
#include "mixgran/utf8.h"

namespace mixgran {
namespace {

struct CharCount {
  char32_t c;
  uint64_t count;
};

// Characters sorted by descending frequency (ties by code point), truncated
// to the shortest prefix whose mass reaches `coverage`.
std::vector<CharCount> CoveredChars(std::span<const NormalizedText> corpus,
                                    double coverage) {
  std::unordered_map<char32_t, uint64_t> freq;
  uint64_t total = 0;
  for (const NormalizedText& line : corpus) {
    for (char32_t c : line.chars) ++freq[c];
    total += line.chars.size();
  }
  std::vector<CharCount> chars;
  chars.reserve(freq.size());
  for (const auto& [c, n] : freq) chars.push_back({c, n});
  std::sort(chars.begin(), chars.end(), [](const CharCount& a, const CharCount& b) {
    return a.count != b.count ? a.count > b.count : a.c < b.c;
  });
  const long double needed = static_cast<long double>(coverage) * total;
  uint64_t cumulative = 0;
  std::size_t keep = 0;
  while (keep < chars.size() && cumulative < needed) {
    cumulative += chars[keep].count;
    ++keep;
  }
  chars.resize(keep);
  return chars;
}

struct Ngram {
  std::u32string_view text;
  uint64_t count;
  uint64_t Score() const { return count * text.size(); }
};

// Heap order: the worst-ranked n-gram on top.
struct NgramWorse {
  bool operator()(const Ngram& a, const Ngram& b) const {
    if (a.Score() != b.Score()) return a.Score() > b.Score();
    if (a.text.size() != b.text.size()) return a.text.size() < b.text.size();
    return a.text < b.text;
  }
};

bool ContainsSpecialText(std::u32string_view s) {
  if (s.find(U'[') == std::u32string_view::npos) return false;
  for (std::string_view special : Vocabulary::kSpecialSurfaces) {
    const std::u32string u = *utf8::Decode(special);
    if (s.find(u) != std::u32string_view::npos) return true;
  }
  return false;
}

void Progress(const TrainerConfig& config, const std::string& message) {
  if (config.on_progress) config.on_progress(message);
}

}  // namespace

void TrainerConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, what);
  };
  if (target_size == 0) fail("target_size must be positive");
  if (EffectiveSeedSize() < target_size) fail("seed_size must be >= target_size");
  if (max_piece_len == 0) fail("max_piece_len must be positive");
  if (em_iters_per_round <= 0) fail("em_iters_per_round must be positive");
  if (!(shrink_keep_ratio > 0.0 && shrink_keep_ratio < 1.0)) {
    fail("shrink_keep_ratio must lie in (0, 1)");
  }
  if (!(char_coverage > 0.0 && char_coverage <= 1.0)) {
    fail("char_coverage must lie in (0, 1]");
  }
  if (!(unk_penalty <= 0.0) || std::isinf(unk_penalty)) {
    fail("unk_penalty must be finite and <= 0");
  }
}

CandidateSet SeedVocabulary(std::span<const NormalizedText> corpus,
                            const TrainerConfig& config) {
  config.Validate();
  std::size_t total_chars = 0;
  for (const NormalizedText& line : corpus) total_chars += line.size();
  if (total_chars == 0) throw Error(ErrorCode::kEmptyCorpus, "corpus is empty");

  const std::vector<CharCount> chars =
      CoveredChars(corpus, config.char_coverage);
  std::unordered_set<char32_t> covered;
  for (const CharCount& cc : chars) covered.insert(cc.c);

  const std::size_t seed_size = config.EffectiveSeedSize();
  const std::size_t room =
      seed_size > chars.size() ? seed_size - chars.size() : 0;

  std::priority_queue<Ngram, std::vector<Ngram>, NgramWorse> best;
  for (std::size_t n = 2; n <= config.max_piece_len && room > 0; ++n) {
    std::unordered_map<std::u32string_view, uint64_t> counts;
    for (const NormalizedText& line : corpus) {
      const std::u32string_view s = line.chars;
      // `valid_run` is the length of the run of eligible characters ending at
      // the current position.
      std::size_t valid_run = 0;
      for (std::size_t end = 1; end <= s.size(); ++end) {
        const char32_t c = s[end - 1];
        valid_run = (c != U' ' && covered.count(c)) ? valid_run + 1 : 0;
        if (valid_run >= n) ++counts[s.substr(end - n, n)];
      }
    }
    for (const auto& [text, count] : counts) {
      if (ContainsSpecialText(text)) continue;
      Ngram g{text, count};
      if (best.size() < room) {
        best.push(g);
      } else if (NgramWorse()(g, best.top())) {
        best.pop();
        best.push(g);
      }
    }
  }

  std::vector<Ngram> ngrams;
  ngrams.reserve(best.size());
  while (!best.empty()) {
    ngrams.push_back(best.top());
    best.pop();
  }
  std::reverse(ngrams.begin(), ngrams.end());

  CandidateSet candidates;
  candidates.reserve(chars.size() + ngrams.size());
  double total = 0.0;
  for (const CharCount& cc : chars) {
    std::string s;
    utf8::Append(cc.c, &s);
    candidates.push_back({std::move(s), static_cast<double>(cc.count), 0.0});
    total += static_cast<double>(cc.count);
  }
  for (const Ngram& g : ngrams) {
    candidates.push_back(
        {utf8::Encode(g.text), static_cast<double>(g.count), 0.0});
    total += static_cast<double>(g.count);
  }
  for (Candidate& c : candidates) c.log_prob = std::log(c.count / total);
  return candidates;
}

Vocabulary TrainingVocabulary(const CandidateSet& candidates) {
  std::vector<Piece> pieces = Vocabulary::SpecialPieces();
  pieces.reserve(pieces.size() + candidates.size());
  for (const Candidate& c : candidates) {
    pieces.push_back(
        {c.surface, std::min(0.0, c.log_prob), KindForSurface(c.surface)});
  }
  return Vocabulary(std::move(pieces));
}

double EmStep(std::span<const NormalizedText> corpus, CandidateSet* candidates,
              const TrainerConfig& config) {
  const Vocabulary vocab = TrainingVocabulary(*candidates);
  double log_likelihood = 0.0;
  const std::vector<double> expected =
      kernels::ExpectedCounts(corpus, vocab, config.lattice_options(),
                              config.num_threads, &log_likelihood);

  double total = 0.0;
  for (std::size_t i = 0; i < candidates->size(); ++i) {
    total += expected[i + Vocabulary::kNumSpecials];
  }
  for (std::size_t i = 0; i < candidates->size(); ++i) {
    const double count = expected[i + Vocabulary::kNumSpecials];
    Candidate& c = (*candidates)[i];
    c.count = count;
    c.log_prob = count > 0.0 && total > 0.0
                     ? std::max(kMinLogProb, std::log(count / total))
                     : kMinLogProb;
  }
  return log_likelihood;
}

std::vector<double> PruneLosses(std::span<const NormalizedText> corpus,
                                const CandidateSet& candidates,
                                const std::set<std::string>& protected_set,
                                const TrainerConfig& config) {
  const Vocabulary vocab = TrainingVocabulary(candidates);
  const LatticeOptions options = config.lattice_options();
  const std::vector<int64_t> usage =
      kernels::ViterbiUsage(corpus, vocab, options, config.num_threads);

  std::vector<double> losses(candidates.size(), 0.0);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (protected_set.count(candidates[i].surface)) {
      losses[i] = std::numeric_limits<double>::infinity();
      continue;
    }
    const PieceId id = static_cast<PieceId>(i + Vocabulary::kNumSpecials);
    if (usage[id] == 0) continue;

    Lattice lattice = BuildLattice(vocab.chars(id), vocab, options);
    Lattice without;
    without.length = lattice.length;
    for (std::size_t p = 0; p < lattice.length; ++p) {
      without.first_edge.push_back(static_cast<uint32_t>(without.edges.size()));
      auto [first, last] = lattice.EdgesFrom(p);
      for (std::size_t e = first; e < last; ++e) {
        if (lattice.edges[e].piece_id != id) {
          without.edges.push_back(lattice.edges[e]);
        }
      }
    }
    without.first_edge.push_back(static_cast<uint32_t>(without.edges.size()));
    const PathResult reroute = Viterbi(without);
    losses[i] = static_cast<double>(usage[id]) *
                (vocab.piece(id).log_prob - reroute.score);
  }
  return losses;
}

CandidateSet Prune(std::span<const NormalizedText> corpus,
                   const CandidateSet& candidates, double keep_ratio,
                   const std::set<std::string>& protected_set,
                   const TrainerConfig& config, std::size_t min_keep) {
  const std::vector<double> losses =
      PruneLosses(corpus, candidates, protected_set, config);

  std::vector<std::size_t> unprotected;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!protected_set.count(candidates[i].surface)) unprotected.push_back(i);
  }
  const auto ratio_keep = static_cast<std::size_t>(
      std::ceil(keep_ratio * static_cast<double>(unprotected.size())));
  const std::size_t keep = std::min(
      unprotected.size(), std::max(ratio_keep, min_keep));

  std::sort(unprotected.begin(), unprotected.end(),
            [&](std::size_t a, std::size_t b) {
              if (losses[a] != losses[b]) return losses[a] > losses[b];
              const std::size_t la = utf8::CharCount(candidates[a].surface);
              const std::size_t lb = utf8::CharCount(candidates[b].surface);
              if (la != lb) return la < lb;
              return candidates[a].surface < candidates[b].surface;
            });
  std::vector<bool> kept(candidates.size(), false);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    kept[i] = protected_set.count(candidates[i].surface) > 0;
  }
  for (std::size_t k = 0; k < keep; ++k) kept[unprotected[k]] = true;

  CandidateSet out;
  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (kept[i]) out.push_back(candidates[i]);
  }
  return out;
}

Vocabulary Train(std::span<const NormalizedText> corpus,
                 const TrainerConfig& config) {
  config.Validate();
  CandidateSet candidates = SeedVocabulary(corpus, config);

  std::set<std::string> protected_set;
  std::set<char32_t> required_chars;
  for (const Candidate& c : candidates) {
    if (KindForSurface(c.surface) == PieceKind::kChar) {
      protected_set.insert(c.surface);
      required_chars.insert((*utf8::Decode(c.surface))[0]);
    }
  }
  if (config.target_size < Vocabulary::kNumSpecials + protected_set.size()) {
    throw Error(ErrorCode::kTargetTooSmall,
                "target size " + std::to_string(config.target_size) +
                    " cannot hold 5 specials and " +
                    std::to_string(protected_set.size()) + " characters");
  }
  const std::size_t limit = config.target_size - Vocabulary::kNumSpecials;
  const std::size_t min_unprotected = limit - protected_set.size();
  Progress(config, "seeded " + std::to_string(candidates.size()) +
                       " candidates (" + std::to_string(protected_set.size()) +
                       " characters)");

  for (int round = 0;; ++round) {
    for (int it = 0; it < config.em_iters_per_round; ++it) {
      const double ll = EmStep(corpus, &candidates, config);
      Progress(config, "round " + std::to_string(round) + " em " +
                           std::to_string(it) + " log_likelihood " +
                           std::to_string(ll) + " size " +
                           std::to_string(candidates.size()));
    }
    if (candidates.size() <= limit) break;
    const std::size_t before = candidates.size();
    candidates = Prune(corpus, candidates, config.shrink_keep_ratio,
                       protected_set, config, min_unprotected);
    if (candidates.size() == before) {
      // ceil() stalls on tiny unprotected sets; drop one piece at a time.
      const std::size_t unprotected = before - protected_set.size();
      candidates = Prune(corpus, candidates, 0.0, protected_set, config,
                         std::max(min_unprotected, unprotected - 1));
    }
  }

  std::vector<Piece> pieces;
  pieces.reserve(candidates.size());
  for (const Candidate& c : candidates) {
    pieces.push_back(
        {c.surface, std::min(0.0, c.log_prob), KindForSurface(c.surface)});
  }
  return BuildFinal(pieces, config.target_size, required_chars);
}

Vocabulary TrainCharVocabulary(std::span<const NormalizedText> corpus,
                               const TrainerConfig& config) {
  config.Validate();
  const std::vector<CharCount> chars =
      CoveredChars(corpus, config.char_coverage);
  if (chars.empty()) throw Error(ErrorCode::kEmptyCorpus, "corpus is empty");
  double total = 0.0;
  for (const CharCount& cc : chars) total += static_cast<double>(cc.count);
  std::vector<Piece> pieces;
  std::set<char32_t> required;
  for (const CharCount& cc : chars) {
    std::string s;
    utf8::Append(cc.c, &s);
    pieces.push_back({std::move(s),
                      std::log(static_cast<double>(cc.count) / total),
                      PieceKind::kChar});
    required.insert(cc.c);
  }
  return BuildFinal(pieces, Vocabulary::kNumSpecials + pieces.size(), required);
}

}  // namespace mixgran
