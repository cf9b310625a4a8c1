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

#include <gtest/gtest.h>

#include <bit>
#include <vector>

#include "desk_corpus.h"
#include "mixgran/trainer.h"

namespace mixgran {
namespace {

class KernelsTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    testing::DeskCorpusOptions opts;
    opts.target_chars = 150'000;
    opts.alphabet_size = 600;
    corpus_ = new std::vector<NormalizedText>(
        testing::NormalizeLines(testing::GenerateDeskCorpus(opts)));
    TrainerConfig cfg;
    cfg.target_size = 2000;
    vocab_ = new Vocabulary(Train(*corpus_, cfg));
  }
  static void TearDownTestSuite() {
    delete corpus_;
    delete vocab_;
  }

  static std::vector<NormalizedText>* corpus_;
  static Vocabulary* vocab_;
};

std::vector<NormalizedText>* KernelsTest::corpus_ = nullptr;
Vocabulary* KernelsTest::vocab_ = nullptr;

TEST_F(KernelsTest, ExpectedCountsBitIdentical) {
  ASSERT_GT(corpus_->size(), kernels::kBatchLines);
  double serial_ll = 0.0;
  const auto serial = kernels::ExpectedCountsSerial(*corpus_, *vocab_, {}, &serial_ll);
  for (int threads : {1, 2, 3, 8}) {
    double ll = 0.0;
    const auto parallel = kernels::ExpectedCounts(*corpus_, *vocab_, {}, threads, &ll);
    ASSERT_EQ(serial.size(), parallel.size());
    EXPECT_EQ(std::bit_cast<uint64_t>(serial_ll), std::bit_cast<uint64_t>(ll));
    for (std::size_t i = 0; i < serial.size(); ++i) {
      ASSERT_EQ(std::bit_cast<uint64_t>(serial[i]), std::bit_cast<uint64_t>(parallel[i]))
          << "piece " << i << " threads " << threads;
    }
  }
}

TEST_F(KernelsTest, ViterbiUsageBitIdentical) {
  double serial_score = 0.0;
  const auto serial = kernels::ViterbiUsageSerial(*corpus_, *vocab_, {}, &serial_score);
  for (int threads : {1, 2, 8}) {
    double score = 0.0;
    EXPECT_EQ(serial, kernels::ViterbiUsage(*corpus_, *vocab_, {}, threads, &score));
    EXPECT_EQ(std::bit_cast<uint64_t>(serial_score), std::bit_cast<uint64_t>(score));
  }
}

TEST_F(KernelsTest, MakeExamplesIdentical) {
  MaskingConfig cfg;
  cfg.max_len = 64;
  cfg.seed = 5;
  ASSERT_GT(corpus_->size(), 1000u);
  const std::span<const NormalizedText> lines(*corpus_);
  const auto serial = kernels::MakeExamplesSerial(lines, *vocab_, cfg, 100);
  for (int threads : {1, 2, 8}) {
    EXPECT_EQ(serial, kernels::MakeExamples(lines, *vocab_, cfg, 100, threads));
  }
  // Ordinals, not positions within the call, drive the random streams.
  const auto tail = kernels::MakeExamples(lines.subspan(1000), *vocab_, cfg, 1100, 2);
  EXPECT_TRUE(std::equal(tail.begin(), tail.end(), serial.begin() + 1000));
}

TEST(ResolveThreadsTest, PositiveValues) {
  EXPECT_EQ(3, kernels::ResolveThreads(3));
  EXPECT_GE(kernels::ResolveThreads(0), 1);
}

}  // namespace
}  // namespace mixgran
