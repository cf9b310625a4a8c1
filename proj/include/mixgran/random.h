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

#ifndef MIXGRAN_RANDOM_H_
#define MIXGRAN_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>

namespace mixgran {

// Deterministic random stream. Built only on std::mt19937_64 and
// std::seed_seq, whose outputs the standard fixes, so streams are identical
// across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  // Independent stream for one sequence of a dataset.
  static Rng ForSequence(uint64_t seed, uint64_t ordinal);

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n); n > 0.
  uint64_t UniformInt(uint64_t n);

  // Index drawn with probability proportional to `probs`.
  std::size_t Categorical(std::span<const double> probs);

 private:
  explicit Rng(std::seed_seq& seq) : engine_(seq) {}

  std::mt19937_64 engine_;
};

}  // namespace mixgran

#endif  // MIXGRAN_RANDOM_H_
