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


// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any hard criterion fails. The throughput check only warns.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "commands.h"
#include "desk_corpus.h"
#include "json.hpp"
#include "mixgran/dataset.h"
#include "mixgran/digest.h"
#include "mixgran/lattice.h"
#include "mixgran/mmlm.h"
#include "mixgran/textnorm.h"
#include "mixgran/tokenizer.h"
#include "mixgran/trainer.h"
#include "mixgran/utf8.h"
#include "mixgran/vocab.h"

namespace mixgran {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

void Progress(const std::string& msg) { std::cerr << "[acceptance] " << msg << std::endl; }

struct Outcome {
  std::string id;
  bool pass = false;
  bool soft = false;
  std::string detail;
};

std::vector<Outcome>& Outcomes() {
  static std::vector<Outcome> outcomes;
  return outcomes;
}

void Record(const std::string& id, bool pass, const std::string& detail, bool soft = false) {
  Outcomes().push_back({id, pass, soft, detail});
  Progress(id + (pass ? " ok: " : " not met: ") + detail);
}

std::string Fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

int RunCli(std::vector<std::string> args, std::string* out = nullptr,
           const std::string& stdin_text = "") {
  args.insert(args.begin(), "mixgran");
  std::istringstream in(stdin_text);
  std::ostringstream o, e;
  const int status = cli::Run(args, in, o, e);
  if (status != 0) Progress("cli exit " + std::to_string(status) + ": " + e.str());
  if (out != nullptr) *out = o.str();
  return status;
}

// ---------------------------------------------------------------------------
// Exhaustive segmentation oracle over the alphabet {a, b, c}.

constexpr std::size_t kMaxToyPiece = 4;

// Base-4 code of a string over {a, b, c}; digits 1..3, so lengths differ in code.
int Code(std::u32string_view s) {
  int code = 0;
  for (char32_t c : s) code = code * 4 + static_cast<int>(c - U'a') + 1;
  return code;
}

struct ToyInstance {
  Vocabulary vocab;
  std::vector<PieceId> by_code;  // piece id per Code, -1 if absent
  std::vector<double> log_prob;  // per piece id
};

ToyInstance RandomToyInstance(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> score(-6.0, -0.5);
  std::uniform_int_distribution<int> letter(0, 2);
  std::uniform_int_distribution<std::size_t> extra(0, 14);
  std::uniform_int_distribution<std::size_t> len(2, kMaxToyPiece);
  std::vector<std::pair<std::string, double>> pieces = {
      {"a", score(gen)}, {"b", score(gen)}, {"c", score(gen)}};
  std::set<std::string> seen = {"a", "b", "c"};
  for (std::size_t n = extra(gen), i = 0; i < n; ++i) {
    std::string s;
    for (std::size_t k = len(gen); k > 0; --k) s += static_cast<char>('a' + letter(gen));
    if (seen.insert(s).second) pieces.emplace_back(s, score(gen));
  }
  ToyInstance t;
  t.vocab = testing::MakeVocab(pieces);
  int max_code = 0;
  for (std::size_t k = 0; k < kMaxToyPiece; ++k) max_code = max_code * 4 + 3;
  t.by_code.assign(max_code + 1, -1);
  t.log_prob.assign(t.vocab.size(), 0.0);
  for (PieceId id = Vocabulary::kNumSpecials; id < static_cast<PieceId>(t.vocab.size()); ++id) {
    std::u32string chars;
    for (char ch : t.vocab.piece(id).surface) chars += static_cast<char32_t>(ch);
    t.by_code[Code(chars)] = id;
    t.log_prob[id] = t.vocab.piece(id).log_prob;
  }
  return t;
}

struct PathSet {
  std::vector<double> scores;
  std::vector<std::vector<PieceId>> pieces;
};

void Enumerate(const ToyInstance& t, std::u32string_view text, std::size_t pos, double score,
               std::vector<PieceId>* stack, PathSet* out) {
  if (pos == text.size()) {
    out->scores.push_back(score);
    out->pieces.push_back(*stack);
    return;
  }
  for (std::size_t len = 1; len <= kMaxToyPiece && pos + len <= text.size(); ++len) {
    const PieceId id = t.by_code[Code(text.substr(pos, len))];
    if (id < 0) continue;
    stack->push_back(id);
    Enumerate(t, text, pos + len, score + t.log_prob[id], stack, out);
    stack->pop_back();
  }
}

std::vector<std::u32string> AllStrings(std::size_t max_len) {
  std::vector<std::u32string> out;
  std::vector<std::u32string> layer = {U""};
  for (std::size_t n = 1; n <= max_len; ++n) {
    std::vector<std::u32string> next;
    for (const auto& s : layer) {
      for (char32_t c : {U'a', U'b', U'c'}) next.push_back(s + c);
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

void CheckLatticeOracles() {
  std::mt19937_64 gen(4242);
  const std::vector<std::u32string> strings = AllStrings(8);
  std::vector<ToyInstance> instances;
  for (int i = 0; i < 100; ++i) instances.push_back(RandomToyInstance(gen));

  // Viterbi against the exhaustive maximum. Path scores are accumulated left
  // to right in both, so equality is exact.
  auto start = Clock::now();
  std::size_t viterbi_mismatch = 0;
  std::size_t cases = 0;
  for (const ToyInstance& t : instances) {
    PathSet paths;
    std::vector<PieceId> stack;
    for (const auto& s : strings) {
      paths.scores.clear();
      paths.pieces.clear();
      Enumerate(t, s, 0, 0.0, &stack, &paths);
      const double best = *std::max_element(paths.scores.begin(), paths.scores.end());
      const PathResult v = Viterbi(BuildLattice(s, t.vocab));
      double rescored = 0.0;
      for (PieceId id : v.piece_ids) rescored += t.log_prob[id];
      if (v.score != best || rescored != best) ++viterbi_mismatch;
      ++cases;
    }
  }
  const double viterbi_seconds = Seconds(start);
  Record("A1", viterbi_mismatch == 0 && viterbi_seconds < 60.0,
         std::to_string(cases) + " strings, " + std::to_string(viterbi_mismatch) +
             " mismatches, " + Fmt("%.1f s", viterbi_seconds));

  // Forward-backward against explicit sums over every segmentation.
  start = Clock::now();
  double worst = 0.0;
  std::size_t fb_fail = 0;
  auto rel = [](double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
  };
  for (const ToyInstance& t : instances) {
    PathSet paths;
    std::vector<PieceId> stack;
    std::vector<double> expected(t.vocab.size());
    for (const auto& s : strings) {
      paths.scores.clear();
      paths.pieces.clear();
      Enumerate(t, s, 0, 0.0, &stack, &paths);
      const double top = *std::max_element(paths.scores.begin(), paths.scores.end());
      double z = 0.0;
      for (double sc : paths.scores) z += std::exp(sc - top);
      const double log_z = top + std::log(z);
      std::fill(expected.begin(), expected.end(), 0.0);
      for (std::size_t p = 0; p < paths.scores.size(); ++p) {
        const double w = std::exp(paths.scores[p] - log_z);
        for (PieceId id : paths.pieces[p]) expected[id] += w;
      }
      const ExpectedCounts fb = ForwardBackward(BuildLattice(s, t.vocab));
      double err = rel(fb.total_log_likelihood, log_z);
      for (PieceId id = 0; id < static_cast<PieceId>(t.vocab.size()); ++id) {
        const double got = fb.CountOf(id);
        err = std::max(err, expected[id] == 0.0 ? std::abs(got) : rel(got, expected[id]));
      }
      worst = std::max(worst, err);
      if (!(err <= 1e-9)) ++fb_fail;
    }
  }
  const double fb_seconds = Seconds(start);
  Record("A2", fb_fail == 0 && fb_seconds < 60.0,
         std::to_string(cases) + " strings, worst relative error " + Fmt("%.2e", worst) + ", " +
             Fmt("%.1f s", fb_seconds));
}

// ---------------------------------------------------------------------------
// Corpus-level checks.

void CheckEmMonotone(const std::vector<NormalizedText>& corpus) {
  const auto start = Clock::now();
  const std::span<const NormalizedText> lines(corpus.data(), 1000);
  TrainerConfig cfg;
  cfg.target_size = 2000;
  CandidateSet cands = SeedVocabulary(lines, cfg);
  std::vector<double> ll;
  for (int i = 0; i < 10; ++i) ll.push_back(EmStep(lines, &cands, cfg));
  bool ok = true;
  double worst = 0.0;
  for (std::size_t i = 1; i < ll.size(); ++i) {
    const double drop = (ll[i - 1] - ll[i]) / std::abs(ll[i - 1]);
    worst = std::max(worst, drop);
    if (drop > 1e-6) ok = false;
  }
  const double secs = Seconds(start);
  Record("A3", ok && secs < 120.0,
         Fmt("log-likelihood %.6g -> %.6g, largest relative drop %.2e, %.1f s", ll.front(),
             ll.back(), worst, secs));
}

Vocabulary CheckVocabularyContract(const std::vector<NormalizedText>& corpus,
                                   const fs::path& dir) {
  std::size_t chars = 0;
  for (const auto& t : corpus) chars += t.size();
  TrainerConfig cfg;
  cfg.target_size = 5000;
  cfg.char_coverage = 1.0;
  const auto start = Clock::now();
  SaveVocabulary(Train(corpus, cfg), dir / "run1.tsv");
  const double first = Seconds(start);
  Progress(Fmt("first training run %.1f s", first));
  SaveVocabulary(Train(corpus, cfg), dir / "run2.tsv");
  const double secs = Seconds(start);
  const Vocabulary vocab = LoadVocabulary(dir / "run1.tsv");
  std::size_t unk = 0;
  for (const auto& t : corpus) {
    for (PieceId id : Encode(t, vocab, EncodeMode::kMixed).piece_ids) {
      unk += id == Vocabulary::kUnkId;
    }
  }
  const bool identical = Sha256FileHex(dir / "run1.tsv") == Sha256FileHex(dir / "run2.tsv");
  Record("A4", chars >= 1'000'000 && vocab.size() == 5000 && unk == 0 && identical &&
                   first < 600.0,
         std::to_string(chars) + " chars, " + std::to_string(vocab.size()) + " pieces, " +
             std::to_string(unk) + " UNK, runs " + (identical ? "identical" : "differ") +
             Fmt(", %.1f s per run", first));
  return vocab;
}

void CheckRoundTrip(const std::vector<NormalizedText>& corpus, const Vocabulary& vocab) {
  const std::size_t n = std::min<std::size_t>(10'000, corpus.size());
  std::size_t bad = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string want = corpus[i].Utf8();
    for (EncodeMode mode : {EncodeMode::kMixed, EncodeMode::kCharOnly}) {
      bad += Decode(Encode(corpus[i], vocab, mode), vocab) != want;
    }
  }
  Record("A5", n == 10'000 && bad == 0,
         std::to_string(n) + " lines x 2 modes, " + std::to_string(bad) + " failures");
}

// Lines that encode to exactly `words` maskable pieces: long generated lines
// cut after the piece at index words - 1, kept when the cut re-encodes to that
// length without UNK. Characters too rare to reach the vocabulary give UNK.
std::vector<NormalizedText> LinesOfExactLength(const Vocabulary& vocab, std::size_t count,
                                               std::size_t words) {
  testing::DeskCorpusOptions opts;
  opts.min_words = 420;
  opts.max_words = 520;
  opts.target_chars = count * 1150;
  std::vector<NormalizedText> out;
  std::size_t tried = 0;
  while (out.size() < count) {
    // A larger target reproduces the same prefix; continue past it.
    const std::vector<NormalizedText> lines =
        testing::NormalizeLines(testing::GenerateDeskCorpus(opts));
    for (std::size_t i = tried; i < lines.size() && out.size() < count; ++i) {
      ++tried;
      const TokenSequence seq = Encode(lines[i], vocab, EncodeMode::kMixed);
      if (seq.size() < words) continue;
      // Normalize again: a cut can end in whitespace, which reading trims.
      NormalizedText cut;
      cut.chars = lines[i].chars.substr(0, seq.spans[words - 1].end);
      cut = Normalize(cut.Utf8(), out.size() + 1);
      const TokenSequence again = Encode(cut, vocab, EncodeMode::kMixed);
      if (again.size() == words && std::all_of(again.piece_ids.begin(), again.piece_ids.end(),
                                               [](PieceId id) { return IsMaskable(id); })) {
        out.push_back(std::move(cut));
      }
    }
    opts.target_chars *= 2;
  }
  Progress("kept " + std::to_string(out.size()) + " of " + std::to_string(tried) +
           " long lines");
  return out;
}

void WriteCorpus(const fs::path& path, std::span<const NormalizedText> lines) {
  std::ofstream out(path, std::ios::binary);
  for (const auto& t : lines) out << t.Utf8() << '\n';
}

void CheckMaskingStatistics(const Vocabulary& vocab, const fs::path& dir,
                            std::size_t* violations) {
  const std::vector<NormalizedText> lines = LinesOfExactLength(vocab, 10'000, 512);
  WriteCorpus(dir / "long.txt", lines);
  SaveVocabulary(vocab, dir / "vocab.tsv");
  BuildOptions opts;
  opts.masking.max_len = 640;  // room for expansions past 512 words
  opts.masking.seed = 2022;
  BuildDataset(dir / "long.txt", dir / "vocab.tsv", dir / "long_ds", opts);
  const MaskingStats s = ComputeStats(ListShards(dir / "long_ds"), vocab);
  *violations += s.label_consistency_violations;

  Record("A6", s.example_count == 10'000 && s.word_positions_total == 10'000u * 512 &&
                   s.masked_fraction >= 0.145 && s.masked_fraction <= 0.155,
         std::to_string(s.example_count) + " examples, " +
             std::to_string(s.word_positions_total) + " words, masked fraction " +
             Fmt("%.5f", s.masked_fraction));

  const double acted = static_cast<double>(s.mask_count + s.random_count + s.keep_count);
  const std::array<double, 3> share = {s.mask_count / acted, s.random_count / acted,
                                       s.keep_count / acted};
  const std::array<double, 3> want = {0.8, 0.1, 0.1};
  bool shares_ok = acted >= 100'000;
  for (int i = 0; i < 3; ++i) shares_ok &= std::abs(share[i] - want[i]) <= 0.01;
  Record("A7", shares_ok,
         Fmt("%.0f masked non-expanded words, shares %.4f / %.4f / %.4f", acted, share[0],
             share[1], share[2]));

  Record("A8",
         s.masked_multichar_words > 0 && s.expand_fraction_multichar >= 0.19 &&
             s.expand_fraction_multichar <= 0.21,
         std::to_string(s.masked_multichar_words) + " masked multi-character words, expand " +
             Fmt("fraction %.5f", s.expand_fraction_multichar));

  // Drawn span sizes, before clipping, from the traced sampler.
  std::array<std::size_t, 4> drawn{};
  std::size_t draws = 0;
  for (std::size_t i = 0; i < lines.size() && draws < 200'000; ++i) {
    for (const WordSpan& span : TraceExample(lines[i].chars, vocab, opts.masking, i).spans) {
      ++drawn[span.drawn_n - 1];
      ++draws;
    }
  }
  const std::array<double, 4> want_n = {0.4, 0.3, 0.2, 0.1};
  bool ngram_ok = draws >= 100'000;
  std::array<double, 4> got_n{};
  for (int i = 0; i < 4; ++i) {
    got_n[i] = static_cast<double>(drawn[i]) / static_cast<double>(draws);
    ngram_ok &= std::abs(got_n[i] - want_n[i]) <= 0.02;
  }
  Record("A9", ngram_ok,
         std::to_string(draws) + " draws, shares " +
             Fmt("%.4f / %.4f / %.4f / %.4f", got_n[0], got_n[1], got_n[2], got_n[3]));
}

void CheckWorkedExample() {
  std::ifstream in(MIXGRAN_TEST_DATA "/worked_example_golden.json");
  const nlohmann::json golden = nlohmann::json::parse(in);
  const Vocabulary vocab = LoadVocabulary(MIXGRAN_TEST_DATA "/worked_example_vocab.tsv");
  MaskingConfig cfg;
  cfg.mask_rate = golden["config"]["mask_rate"];
  cfg.max_len = golden["config"]["max_len"];
  cfg.seed = golden["config"]["seed"];
  const std::u32string text = *utf8::Decode(golden["text"].get<std::string>());
  const ExampleTrace t = TraceExample(text, vocab, cfg, golden["config"]["ordinal"]);
  const bool ok = t.sequence.piece_ids == golden["sequence"].get<std::vector<PieceId>>() &&
                  t.example.input_ids == golden["input_ids"].get<std::vector<int32_t>>() &&
                  t.example.labels == golden["labels"].get<std::vector<int32_t>>() &&
                  t.example.attention == golden["attention"].get<std::vector<uint8_t>>();
  std::string labels;
  for (std::size_t p = 0; p < t.example.labels.size(); ++p) {
    if (t.example.labels[p] != kIgnoreLabel) {
      labels += " " + std::to_string(p) + ":" + vocab.piece(t.example.labels[p]).surface;
    }
  }
  Record("A11", ok, "labels" + labels);
}

void CheckWorkerDeterminism(const fs::path& dir, std::size_t* violations) {
  std::vector<std::string> digests[2];
  int i = 0;
  for (const char* workers : {"1", "8"}) {
    const fs::path out = dir / (std::string("workers") + workers);
    RunCli({"build-dataset", "--vocab", dir / "vocab.tsv", "--input", dir / "desk.txt", "--out",
            out, "--shard-size", "4000", "--seed", "9", "--workers", workers});
    for (const fs::path& p : ListShards(out)) digests[i].push_back(Sha256FileHex(p));
    ++i;
  }
  *violations +=
      ComputeStats(ListShards(dir / "workers1"), LoadVocabulary(dir / "vocab.tsv"))
          .label_consistency_violations;
  Record("A12", digests[0].size() > 1 && digests[0] == digests[1],
         std::to_string(digests[0].size()) + " shards per run, digests " +
             (digests[0] == digests[1] ? "identical" : "differ"));
}

void CheckAblationSettings(const std::vector<NormalizedText>& corpus, const fs::path& dir,
                           std::size_t* violations) {
  const fs::path subset = dir / "ablation.txt";
  WriteCorpus(subset, std::span<const NormalizedText>(corpus.data(), 3000));
  const fs::path char_vocab = dir / "cv.tsv";
  const fs::path mixed_vocab = dir / "wv.tsv";
  bool ok = RunCli({"train-vocab", "--input", subset, "--model-out", char_vocab,
                    "--vocab-granularity", "char"}) == 0 &&
            RunCli({"train-vocab", "--input", subset, "--model-out", mixed_vocab, "--vocab-size",
                    "3000"}) == 0;
  if (!ok) {
    Record("A13", false, "vocabulary training failed");
    return;
  }
  // Char-vocabulary with MMLM has nothing to expand and must be refused.
  ok &= RunCli({"build-dataset", "--vocab", char_vocab, "--input", subset, "--out",
                dir / "refused", "--task", "mmlm"}) == 2;

  struct Setting {
    fs::path vocab;
    std::string task;
    std::string input;
    bool expands;
  };
  const Setting settings[] = {{char_vocab, "mlm", "char", false},
                              {mixed_vocab, "mlm", "mixed", false},
                              {mixed_vocab, "mlm", "char", false},
                              {mixed_vocab, "mmlm", "char", true}};
  std::string sample;
  for (int i = 0; i < 10; ++i) sample += corpus[i].Utf8() + "\n";
  std::string detail;
  for (int i = 0; i < 4; ++i) {
    const Setting& s = settings[i];
    const fs::path ds = dir / ("setting" + std::to_string(i + 1));
    std::string stats_json, ids;
    ok &= RunCli({"build-dataset", "--vocab", s.vocab, "--input", subset, "--out", ds,
                  "--max-len", "128", "--task", s.task, "--seed", "4"}) == 0;
    ok &= RunCli({"stats", "--dataset", ds}, &stats_json) == 0;
    ok &= RunCli({"tokenize", "--vocab", s.vocab, "--input-granularity", s.input, "--ids"}, &ids,
                 sample) == 0;
    if (!ok) break;
    const auto stats = nlohmann::json::parse(stats_json);
    const std::size_t expanded = stats["expanded_words"];
    *violations += stats["label_consistency_violations"].get<std::size_t>();
    ok &= s.expands ? expanded > 0 : expanded == 0;
    ok &= stats["masked_words"].get<std::size_t>() > 0;

    // Fine-tuning input: character input yields one character piece per
    // character; mixed input uses word pieces somewhere.
    const Vocabulary vocab = LoadVocabulary(s.vocab);
    std::istringstream lines(ids);
    std::size_t words = 0, line_no = 0;
    for (std::string line; std::getline(lines, line); ++line_no) {
      std::istringstream fields(line);
      std::size_t n = 0;
      for (PieceId id; fields >> id; ++n) words += vocab.IsWord(id);
      if (s.input == "char") ok &= n == corpus[line_no].size();
    }
    ok &= line_no == 10 && (s.input == "char" ? words == 0 : words > 0);
    if (i == 0) {
      ok &= !vocab.has_word_pieces();
      for (const TrainingExample& ex : ReadShards(ListShards(ds))) {
        for (int32_t id : ex.input_ids) ok &= !vocab.IsWord(id);
      }
    }
    detail += " s" + std::to_string(i + 1) + ":expanded=" + std::to_string(expanded);
  }
  Record("A13", ok, "settings" + detail);
}

void CheckThroughput(const Vocabulary& vocab) {
  testing::DeskCorpusOptions opts;
  opts.target_chars = 35'000'000;
  std::vector<NormalizedText> lines = testing::NormalizeLines(testing::GenerateDeskCorpus(opts));
  std::size_t bytes = 0;
  for (const auto& t : lines) bytes += t.Utf8().size();
  const auto start = Clock::now();
  std::size_t pieces = 0;
  for (const auto& t : lines) pieces += Encode(t, vocab, EncodeMode::kMixed).size();
  const double secs = Seconds(start);
  const double rate = bytes / 1e6 / secs;
  Record("A14", bytes >= 100'000'000 && rate >= 2.0,
         Fmt("%.1f MB in %.1f s, %.2f MB/s, ", bytes / 1e6, secs, rate) +
             std::to_string(pieces) + " pieces",
         /*soft=*/true);
}

int Main() {
  const fs::path dir = testing::MakeTempDir("acceptance");
  const auto start = Clock::now();

  Progress("lattice oracles");
  CheckLatticeOracles();

  const std::vector<std::string> raw = testing::GenerateDeskCorpus({});
  const std::vector<NormalizedText> corpus = testing::NormalizeLines(raw);
  testing::WriteLines(dir / "desk.txt", raw);

  Progress("EM");
  CheckEmMonotone(corpus);
  Progress("vocabulary training");
  const Vocabulary vocab = CheckVocabularyContract(corpus, dir);
  CheckRoundTrip(corpus, vocab);

  std::size_t violations = 0;
  Progress("masking statistics");
  CheckMaskingStatistics(vocab, dir, &violations);
  CheckWorkedExample();
  Progress("worker determinism");
  CheckWorkerDeterminism(dir, &violations);
  Progress("ablation settings");
  CheckAblationSettings(corpus, dir, &violations);
  Record("A10", violations == 0,
         std::to_string(violations) + " label-consistency violations across all datasets");
  Progress("throughput");
  CheckThroughput(vocab);
  fs::remove_all(dir);

  std::vector<Outcome> outcomes = Outcomes();
  std::sort(outcomes.begin(), outcomes.end(), [](const Outcome& a, const Outcome& b) {
    return std::stoi(a.id.substr(1)) < std::stoi(b.id.substr(1));
  });
  int failed = 0;
  for (const Outcome& o : outcomes) {
    const char* verdict = o.pass ? "PASS" : (o.soft ? "WARN" : "FAIL");
    std::cout << verdict << " " << o.id << ": " << o.detail << "\n";
    failed += !o.pass && !o.soft;
  }
  std::cout << Fmt("total %.1f s", Seconds(start)) << std::endl;
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace mixgran

int main() { return mixgran::Main(); }
