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

#ifndef MIXGRAN_LATTICE_H_
#define MIXGRAN_LATTICE_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "mixgran/vocab.h"

namespace mixgran {

struct LatticeOptions {
  std::size_t max_piece_len = 8;
  double unk_penalty = -20.0;
};

struct Span {
  uint32_t begin = 0;
  uint32_t end = 0;
  bool operator==(const Span&) const = default;
};

struct LatticeEdge {
  uint32_t begin;
  uint32_t end;
  PieceId piece_id;
  double score;
};

// Segmentation lattice over character positions 0..length. Edges are stored
// sorted by (begin, end); `first_edge[p]` indexes the first edge leaving p.
struct Lattice {
  std::size_t length = 0;
  std::vector<LatticeEdge> edges;
  std::vector<uint32_t> first_edge;  // size length + 1

  std::pair<std::size_t, std::size_t> EdgesFrom(std::size_t pos) const {
    return {first_edge[pos], first_edge[pos + 1]};
  }
};

struct PathResult {
  std::vector<PieceId> piece_ids;
  std::vector<Span> spans;
  double score = 0.0;
};

struct ExpectedCounts {
  // Sorted by piece id, each id once.
  std::vector<std::pair<PieceId, double>> counts;
  double total_log_likelihood = 0.0;

  double CountOf(PieceId id) const;
};

// One edge per in-vocabulary substring of length <= max_piece_len; a span-1
// UNK edge wherever no single-character piece exists.
Lattice BuildLattice(std::u32string_view text, const Vocabulary& vocab,
                     const LatticeOptions& options = {});

// Maximum-score path. Ties prefer fewer pieces, then the path whose edge
// lengths, read from the start, are longest first. The reported score is
// accumulated left to right along the path.
PathResult Viterbi(const Lattice& lattice);

// Log-space forward-backward: total path likelihood and per-piece expected
// usage under the path posterior.
ExpectedCounts ForwardBackward(const Lattice& lattice);

// Brute-force enumeration of every segmentation, independent of the lattice
// code. Texts longer than kMaxEnumerationLength throw kTextTooLong.
inline constexpr std::size_t kMaxEnumerationLength = 16;
std::vector<PathResult> EnumerateSegmentations(
    std::u32string_view text, const Vocabulary& vocab,
    const LatticeOptions& options = {});

// log(exp(a) + exp(b)) without overflow.
double LogAdd(double a, double b);

}  // namespace mixgran

#endif  // MIXGRAN_LATTICE_H_
