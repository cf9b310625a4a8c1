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

#include "mixgran/kernels.h"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mixgran::kernels {
namespace {

struct LineUsage {
  std::vector<PieceId> ids;
  double score = 0.0;
};

LineUsage UsageOf(const NormalizedText& line, const Vocabulary& vocab,
                  const LatticeOptions& options) {
  PathResult path = Viterbi(BuildLattice(line.chars, vocab, options));
  return {std::move(path.piece_ids), path.score};
}

void MergeCounts(const mixgran::ExpectedCounts& line, std::vector<double>* dense,
                 double* log_likelihood) {
  *log_likelihood += line.total_log_likelihood;
  for (const auto& [id, count] : line.counts) (*dense)[id] += count;
}

void MergeUsage(const LineUsage& line, std::vector<int64_t>* dense,
                double* score) {
  *score += line.score;
  for (PieceId id : line.ids) ++(*dense)[id];
}

}  // namespace

int ResolveThreads(int num_threads) {
#ifdef _OPENMP
  return num_threads > 0 ? num_threads : omp_get_max_threads();
#else
  (void)num_threads;
  return 1;
#endif
}

std::vector<double> ExpectedCounts(std::span<const NormalizedText> corpus,
                                   const Vocabulary& vocab,
                                   const LatticeOptions& options,
                                   int num_threads, double* log_likelihood) {
  const int threads = ResolveThreads(num_threads);
  std::vector<double> dense(vocab.size(), 0.0);
  double ll = 0.0;
  std::vector<mixgran::ExpectedCounts> batch;
  for (std::size_t start = 0; start < corpus.size(); start += kBatchLines) {
    const std::size_t n = std::min(kBatchLines, corpus.size() - start);
    batch.assign(n, {});
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (std::size_t i = 0; i < n; ++i) {
      batch[i] = ForwardBackward(
          BuildLattice(corpus[start + i].chars, vocab, options));
    }
    for (const auto& line : batch) MergeCounts(line, &dense, &ll);
  }
  if (log_likelihood) *log_likelihood = ll;
  return dense;
}

std::vector<double> ExpectedCountsSerial(std::span<const NormalizedText> corpus,
                                         const Vocabulary& vocab,
                                         const LatticeOptions& options,
                                         double* log_likelihood) {
  std::vector<double> dense(vocab.size(), 0.0);
  double ll = 0.0;
  for (const NormalizedText& line : corpus) {
    MergeCounts(ForwardBackward(BuildLattice(line.chars, vocab, options)),
                &dense, &ll);
  }
  if (log_likelihood) *log_likelihood = ll;
  return dense;
}

std::vector<int64_t> ViterbiUsage(std::span<const NormalizedText> corpus,
                                  const Vocabulary& vocab,
                                  const LatticeOptions& options,
                                  int num_threads, double* viterbi_score) {
  const int threads = ResolveThreads(num_threads);
  std::vector<int64_t> dense(vocab.size(), 0);
  double score = 0.0;
  std::vector<LineUsage> batch;
  for (std::size_t start = 0; start < corpus.size(); start += kBatchLines) {
    const std::size_t n = std::min(kBatchLines, corpus.size() - start);
    batch.assign(n, {});
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (std::size_t i = 0; i < n; ++i) {
      batch[i] = UsageOf(corpus[start + i], vocab, options);
    }
    for (const auto& line : batch) MergeUsage(line, &dense, &score);
  }
  if (viterbi_score) *viterbi_score = score;
  return dense;
}

std::vector<int64_t> ViterbiUsageSerial(std::span<const NormalizedText> corpus,
                                        const Vocabulary& vocab,
                                        const LatticeOptions& options,
                                        double* viterbi_score) {
  std::vector<int64_t> dense(vocab.size(), 0);
  double score = 0.0;
  for (const NormalizedText& line : corpus) {
    MergeUsage(UsageOf(line, vocab, options), &dense, &score);
  }
  if (viterbi_score) *viterbi_score = score;
  return dense;
}

std::vector<TrainingExample> MakeExamples(
    std::span<const NormalizedText> lines, const Vocabulary& vocab,
    const MaskingConfig& config, uint64_t first_ordinal, int num_threads) {
  config.Validate();
  const int threads = ResolveThreads(num_threads);
  std::vector<TrainingExample> out(lines.size());
  // Exceptions may not cross the parallel region; keep the first by index.
  std::vector<std::exception_ptr> errors(lines.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      out[i] = MakeExample(lines[i].chars, vocab, config, first_ordinal + i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<TrainingExample> MakeExamplesSerial(
    std::span<const NormalizedText> lines, const Vocabulary& vocab,
    const MaskingConfig& config, uint64_t first_ordinal) {
  config.Validate();
  std::vector<TrainingExample> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out.push_back(MakeExample(lines[i].chars, vocab, config, first_ordinal + i));
  }
  return out;
}

}  // namespace mixgran::kernels
