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

#ifndef MIXGRAN_KERNELS_H_
#define MIXGRAN_KERNELS_H_

// Corpus-level data-parallel loops. Each kernel has an OpenMP version and a
// plain serial version kept as the reference for tests and benchmarks. Both
// reduce per-line results in line order, so their outputs are bit-identical
// for any thread count.

#include <cstdint>
#include <span>
#include <vector>

#include "mixgran/lattice.h"
#include "mixgran/mmlm.h"
#include "mixgran/textnorm.h"
#include "mixgran/vocab.h"

namespace mixgran::kernels {

// Lines processed per parallel batch before the ordered merge.
inline constexpr std::size_t kBatchLines = 2048;

// Dense expected piece counts (indexed by id) summed over the corpus; the
// summed log-likelihood goes to `log_likelihood`.
std::vector<double> ExpectedCounts(std::span<const NormalizedText> corpus,
                                   const Vocabulary& vocab,
                                   const LatticeOptions& options,
                                   int num_threads, double* log_likelihood);
std::vector<double> ExpectedCountsSerial(std::span<const NormalizedText> corpus,
                                         const Vocabulary& vocab,
                                         const LatticeOptions& options,
                                         double* log_likelihood);

// Number of times each piece occurs in the corpus Viterbi segmentations; the
// summed Viterbi score goes to `viterbi_score` when non-null.
std::vector<int64_t> ViterbiUsage(std::span<const NormalizedText> corpus,
                                  const Vocabulary& vocab,
                                  const LatticeOptions& options,
                                  int num_threads,
                                  double* viterbi_score = nullptr);
std::vector<int64_t> ViterbiUsageSerial(std::span<const NormalizedText> corpus,
                                        const Vocabulary& vocab,
                                        const LatticeOptions& options,
                                        double* viterbi_score = nullptr);

// make_example over consecutive ordinals starting at `first_ordinal`.
std::vector<TrainingExample> MakeExamples(
    std::span<const NormalizedText> lines, const Vocabulary& vocab,
    const MaskingConfig& config, uint64_t first_ordinal, int num_threads);
std::vector<TrainingExample> MakeExamplesSerial(
    std::span<const NormalizedText> lines, const Vocabulary& vocab,
    const MaskingConfig& config, uint64_t first_ordinal);

// 0 selects the OpenMP default.
int ResolveThreads(int num_threads);

}  // namespace mixgran::kernels

#endif  // MIXGRAN_KERNELS_H_
