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

#include "mixgran/lattice.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mixgran/error.h"
#include "mixgran/utf8.h"

namespace mixgran {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Edge lengths, from the start, of the best path ending at `pos`.
std::vector<uint32_t> LengthsTo(std::size_t pos,
                                const std::vector<int64_t>& back_edge,
                                const std::vector<LatticeEdge>& edges) {
  std::vector<uint32_t> lengths;
  while (pos > 0) {
    const LatticeEdge& e = edges[back_edge[pos]];
    lengths.push_back(e.end - e.begin);
    pos = e.begin;
  }
  std::reverse(lengths.begin(), lengths.end());
  return lengths;
}

void Enumerate(std::u32string_view text, std::size_t pos,
               const Vocabulary& vocab, const LatticeOptions& options,
               PathResult* partial, std::vector<PathResult>* out) {
  if (pos == text.size()) {
    out->push_back(*partial);
    return;
  }
  bool has_char = false;
  for (std::size_t len = 1;
       len <= options.max_piece_len && pos + len <= text.size(); ++len) {
    auto id = vocab.Find(utf8::Encode(text.substr(pos, len)));
    if (!id || Vocabulary::IsSpecial(*id)) continue;
    if (len == 1) has_char = true;
    const double saved = partial->score;
    partial->piece_ids.push_back(*id);
    partial->spans.push_back(
        {static_cast<uint32_t>(pos), static_cast<uint32_t>(pos + len)});
    partial->score = saved + vocab.piece(*id).log_prob;
    Enumerate(text, pos + len, vocab, options, partial, out);
    partial->piece_ids.pop_back();
    partial->spans.pop_back();
    partial->score = saved;
  }
  if (!has_char) {
    const double saved = partial->score;
    partial->piece_ids.push_back(Vocabulary::kUnkId);
    partial->spans.push_back(
        {static_cast<uint32_t>(pos), static_cast<uint32_t>(pos + 1)});
    partial->score = saved + options.unk_penalty;
    Enumerate(text, pos + 1, vocab, options, partial, out);
    partial->piece_ids.pop_back();
    partial->spans.pop_back();
    partial->score = saved;
  }
}

}  // namespace

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::fabs(a - b)));
}

double ExpectedCounts::CountOf(PieceId id) const {
  auto it = std::lower_bound(
      counts.begin(), counts.end(), id,
      [](const std::pair<PieceId, double>& c, PieceId x) { return c.first < x; });
  return it != counts.end() && it->first == id ? it->second : 0.0;
}

Lattice BuildLattice(std::u32string_view text, const Vocabulary& vocab,
                     const LatticeOptions& options) {
  Lattice lattice;
  lattice.length = text.size();
  lattice.first_edge.reserve(text.size() + 1);
  lattice.edges.reserve(text.size() * 2);
  const PieceTrie& trie = vocab.trie();
  const std::size_t max_len = std::max<std::size_t>(1, options.max_piece_len);

  for (std::size_t p = 0; p < text.size(); ++p) {
    lattice.first_edge.push_back(static_cast<uint32_t>(lattice.edges.size()));
    const std::size_t limit = std::min(max_len, text.size() - p);
    int32_t node = PieceTrie::kRoot;
    bool has_char = false;
    for (std::size_t len = 1; len <= limit; ++len) {
      node = trie.Step(node, text[p + len - 1]);
      if (node == PieceTrie::kNone) break;
      const PieceId id = trie.PieceAt(node);
      if (id < 0) continue;
      if (len == 1) has_char = true;
      lattice.edges.push_back({static_cast<uint32_t>(p),
                               static_cast<uint32_t>(p + len), id,
                               vocab.piece(id).log_prob});
    }
    if (!has_char) {
      // Shortest edge first keeps (begin, end) order.
      lattice.edges.insert(
          lattice.edges.begin() + lattice.first_edge.back(),
          {static_cast<uint32_t>(p), static_cast<uint32_t>(p + 1),
           Vocabulary::kUnkId, options.unk_penalty});
    }
  }
  lattice.first_edge.push_back(static_cast<uint32_t>(lattice.edges.size()));
  return lattice;
}

PathResult Viterbi(const Lattice& lattice) {
  const std::size_t n = lattice.length;
  PathResult result;
  if (n == 0) return result;

  std::vector<double> score(n + 1, kNegInf);
  std::vector<uint32_t> pieces(n + 1, 0);
  std::vector<int64_t> back_edge(n + 1, -1);
  score[0] = 0.0;

  for (std::size_t p = 0; p < n; ++p) {
    if (score[p] == kNegInf) continue;
    auto [first, last] = lattice.EdgesFrom(p);
    for (std::size_t i = first; i < last; ++i) {
      const LatticeEdge& edge = lattice.edges[i];
      const double candidate = score[p] + edge.score;
      const uint32_t count = pieces[p] + 1;
      const std::size_t e = edge.end;
      bool take = candidate > score[e] || back_edge[e] < 0;
      if (!take && candidate == score[e]) {
        if (count != pieces[e]) {
          take = count < pieces[e];
        } else {
          std::vector<uint32_t> current = LengthsTo(e, back_edge, lattice.edges);
          std::vector<uint32_t> challenger =
              LengthsTo(p, back_edge, lattice.edges);
          challenger.push_back(edge.end - edge.begin);
          // Longer edge at the first difference wins.
          take = std::lexicographical_compare(
              current.begin(), current.end(), challenger.begin(),
              challenger.end());
        }
      }
      if (take) {
        score[e] = candidate;
        pieces[e] = count;
        back_edge[e] = static_cast<int64_t>(i);
      }
    }
  }

  std::size_t pos = n;
  while (pos > 0) {
    const LatticeEdge& edge = lattice.edges[back_edge[pos]];
    result.piece_ids.push_back(edge.piece_id);
    result.spans.push_back({edge.begin, edge.end});
    pos = edge.begin;
  }
  std::reverse(result.piece_ids.begin(), result.piece_ids.end());
  std::reverse(result.spans.begin(), result.spans.end());
  result.score = score[n];
  return result;
}

ExpectedCounts ForwardBackward(const Lattice& lattice) {
  const std::size_t n = lattice.length;
  ExpectedCounts out;
  if (n == 0) return out;

  std::vector<double> alpha(n + 1, kNegInf);
  std::vector<double> beta(n + 1, kNegInf);
  alpha[0] = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    if (alpha[p] == kNegInf) continue;
    auto [first, last] = lattice.EdgesFrom(p);
    for (std::size_t i = first; i < last; ++i) {
      const LatticeEdge& edge = lattice.edges[i];
      alpha[edge.end] = LogAdd(alpha[edge.end], alpha[p] + edge.score);
    }
  }
  beta[n] = 0.0;
  for (std::size_t p = n; p-- > 0;) {
    auto [first, last] = lattice.EdgesFrom(p);
    for (std::size_t i = first; i < last; ++i) {
      const LatticeEdge& edge = lattice.edges[i];
      beta[p] = LogAdd(beta[p], edge.score + beta[edge.end]);
    }
  }

  const double log_z = alpha[n];
  out.total_log_likelihood = log_z;
  std::vector<std::pair<PieceId, double>> contributions;
  contributions.reserve(lattice.edges.size());
  for (const LatticeEdge& edge : lattice.edges) {
    if (alpha[edge.begin] == kNegInf || beta[edge.end] == kNegInf) continue;
    const double posterior =
        std::exp(alpha[edge.begin] + edge.score + beta[edge.end] - log_z);
    contributions.emplace_back(edge.piece_id, posterior);
  }
  std::stable_sort(contributions.begin(), contributions.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [id, value] : contributions) {
    if (!out.counts.empty() && out.counts.back().first == id) {
      out.counts.back().second += value;
    } else {
      out.counts.emplace_back(id, value);
    }
  }
  return out;
}

std::vector<PathResult> EnumerateSegmentations(std::u32string_view text,
                                               const Vocabulary& vocab,
                                               const LatticeOptions& options) {
  if (text.size() > kMaxEnumerationLength) {
    throw Error(ErrorCode::kTextTooLong,
                "enumeration limited to " +
                    std::to_string(kMaxEnumerationLength) + " characters, got " +
                    std::to_string(text.size()));
  }
  std::vector<PathResult> out;
  PathResult partial;
  Enumerate(text, 0, vocab, options, &partial, &out);
  return out;
}

}  // namespace mixgran
