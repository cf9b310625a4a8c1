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

#include "commands.h"

#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "mixgran/dataset.h"
#include "mixgran/error.h"
#include "mixgran/mmlm.h"
#include "mixgran/textnorm.h"
#include "mixgran/tokenizer.h"
#include "mixgran/trainer.h"
#include "mixgran/vocab.h"

namespace mixgran::cli {
namespace {

namespace fs = std::filesystem;

constexpr int kExitError = 2;

enum class Granularity { kChar, kMixed };

const std::map<std::string, Granularity> kGranularities = {
    {"char", Granularity::kChar}, {"mixed", Granularity::kMixed}};
const std::map<std::string, Task> kTasks = {{"mlm", Task::kMlm},
                                            {"mmlm", Task::kMmlm}};

struct TrainVocabArgs {
  fs::path input;
  fs::path model_out;
  std::size_t vocab_size = 5000;
  double char_coverage = 1.0;
  std::size_t max_piece_len = 8;
  std::size_t seed_size = 0;
  int em_iters = 2;
  double shrink_ratio = 0.75;
  uint64_t seed = 0;
  int threads = 0;
  Granularity granularity = Granularity::kMixed;
  bool verbose = false;
};

struct TokenizeArgs {
  fs::path vocab;
  Granularity mode = Granularity::kMixed;
  bool ids = false;
  bool pieces = false;
};

struct BuildDatasetArgs {
  fs::path vocab;
  fs::path input;
  fs::path out;
  std::size_t max_len = 512;
  double mask_rate = 0.15;
  double cmlm_rate = 0.20;
  std::string ngram_probs = "0.4,0.3,0.2,0.1";
  std::string action_probs = "0.8,0.1,0.1";
  Task task = Task::kMmlm;
  uint64_t seed = 0;
  int workers = 1;
  std::size_t shard_size = 10000;
};

struct DatasetArgs {
  fs::path dataset;
  fs::path vocab;
  std::size_t n = 1;
};

template <std::size_t N>
std::array<double, N> ParseProbs(const std::string& text, const char* flag) {
  std::array<double, N> out{};
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i == N) break;
    std::size_t used = 0;
    try {
      out[i] = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw Error(ErrorCode::kInvalidConfig,
                  std::string(flag) + ": '" + item + "' is not a number");
    }
    ++i;
  }
  if (i != N || std::getline(ss, item, ',')) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string(flag) + " needs exactly " + std::to_string(N) +
                    " comma-separated values");
  }
  return out;
}

std::vector<NormalizedText> ReadInput(const fs::path& path) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kIoFailure, "input not found: " + path.string());
  }
  return ReadCorpus(path);
}

int TrainVocab(const TrainVocabArgs& args, std::ostream& err) {
  const std::vector<NormalizedText> corpus = ReadInput(args.input);
  TrainerConfig config;
  config.target_size = args.vocab_size;
  config.seed_size = args.seed_size;
  config.max_piece_len = args.max_piece_len;
  config.em_iters_per_round = args.em_iters;
  config.shrink_keep_ratio = args.shrink_ratio;
  config.char_coverage = args.char_coverage;
  config.seed = args.seed;
  config.num_threads = args.threads;
  if (args.verbose) {
    config.on_progress = [&err](const std::string& m) { err << m << '\n'; };
  }
  const Vocabulary vocab = args.granularity == Granularity::kChar
                               ? TrainCharVocabulary(corpus, config)
                               : Train(corpus, config);
  SaveVocabulary(vocab, args.model_out);
  err << "wrote " << vocab.size() << " pieces to " << args.model_out.string()
      << '\n';
  return 0;
}

int Tokenize(const TokenizeArgs& args, std::istream& in, std::ostream& out) {
  const Vocabulary vocab = LoadVocabulary(args.vocab);
  const EncodeMode mode = args.mode == Granularity::kChar
                              ? EncodeMode::kCharOnly
                              : EncodeMode::kMixed;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const NormalizedText text = Normalize(line, line_no);
    const TokenSequence seq = Encode(text, vocab, mode);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i > 0) out << ' ';
      if (args.ids) {
        out << seq.piece_ids[i];
      } else {
        out << vocab.piece(seq.piece_ids[i]).surface;
      }
    }
    out << '\n';
  }
  return 0;
}

int BuildDatasetCmd(const BuildDatasetArgs& args, std::ostream& err) {
  if (!fs::exists(args.input)) {
    throw Error(ErrorCode::kIoFailure, "input not found: " + args.input.string());
  }
  BuildOptions options;
  options.masking.mask_rate = args.mask_rate;
  options.masking.cmlm_rate = args.cmlm_rate;
  options.masking.ngram_probs = ParseProbs<4>(args.ngram_probs, "--ngram-probs");
  options.masking.action_probs =
      ParseProbs<3>(args.action_probs, "--action-probs");
  options.masking.max_len = args.max_len;
  options.masking.seed = args.seed;
  options.masking.task = args.task;
  options.masking.Validate();
  options.shard_size = args.shard_size;
  options.workers = args.workers;
  if (args.workers <= 0) {
    throw Error(ErrorCode::kInvalidConfig, "--workers must be positive");
  }

  if (args.task == Task::kMmlm && !LoadVocabulary(args.vocab).has_word_pieces()) {
    throw Error(ErrorCode::kInvalidConfig,
                "--task mmlm needs a mixed vocabulary: a character vocabulary "
                "has no multi-character words to expand (use --task mlm)");
  }
  const DatasetInfo info =
      BuildDataset(args.input, args.vocab, args.out, options);
  err << "wrote " << info.total_examples << " examples in "
      << info.shards.size() << " shards to " << args.out.string()
      << " (fingerprint " << info.fingerprint << ")\n";
  return 0;
}

fs::path ResolveVocab(const DatasetArgs& args) {
  if (!args.vocab.empty()) return args.vocab;
  if (fs::is_directory(args.dataset)) {
    fs::path recorded = ManifestVocabPath(args.dataset);
    if (!recorded.empty()) return recorded;
  }
  throw Error(ErrorCode::kInvalidConfig,
              "--vocab is required when the dataset has no manifest");
}

int Stats(const DatasetArgs& args, std::ostream& out) {
  const Vocabulary vocab = LoadVocabulary(ResolveVocab(args));
  const MaskingStats stats = ComputeStats(ListShards(args.dataset), vocab);
  out << StatsToJson(stats) << '\n';
  return 0;
}

std::string Surface(const Vocabulary& vocab, int32_t id) {
  if (!vocab.Contains(id)) return "#" + std::to_string(id);
  return vocab.piece(id).surface;
}

int Inspect(const DatasetArgs& args, std::ostream& out) {
  const Vocabulary vocab = LoadVocabulary(ResolveVocab(args));
  ShardReader reader(ListShards(args.dataset));
  TrainingExample ex;
  for (std::size_t k = 0; k < args.n && reader.Next(&ex); ++k) {
    std::size_t real = 0;
    while (real < ex.attention.size() && ex.attention[real]) ++real;
    out << "example " << k << ": " << real << " tokens, "
        << ex.input_ids.size() - real << " padding\n";
    std::string masked_view;
    for (std::size_t p = 0; p < real; ++p) {
      out << "  " << std::setw(4) << p << "  " << Surface(vocab, ex.input_ids[p]);
      if (ex.labels[p] != kIgnoreLabel) {
        out << "  -> " << Surface(vocab, ex.labels[p]);
      }
      out << '\n';
      if (p > 0) masked_view += ' ';
      masked_view += Surface(vocab, ex.input_ids[p]);
    }
    out << "  input: " << masked_view << '\n';
  }
  return 0;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixed-granularity tokenizer and masked-LM data pipeline",
               "mixgran"};
  app.require_subcommand(1);

  TrainVocabArgs train;
  auto* train_cmd = app.add_subcommand("train-vocab", "Train a vocabulary");
  train_cmd->add_option("--input", train.input, "Corpus, one line per text")
      ->required();
  train_cmd->add_option("--model-out", train.model_out, "Output TSV")
      ->required();
  train_cmd->add_option("--vocab-size", train.vocab_size, "Total pieces")
      ->capture_default_str();
  train_cmd->add_option("--char-coverage", train.char_coverage)
      ->capture_default_str();
  train_cmd->add_option("--max-piece-len", train.max_piece_len)
      ->capture_default_str();
  train_cmd->add_option("--seed-size", train.seed_size,
                        "Initial candidates (0: 4 x vocab size)");
  train_cmd->add_option("--em-iters", train.em_iters)->capture_default_str();
  train_cmd->add_option("--shrink-ratio", train.shrink_ratio)
      ->capture_default_str();
  train_cmd->add_option("--seed", train.seed)->capture_default_str();
  train_cmd->add_option("--threads", train.threads, "0: all cores");
  train_cmd->add_option("--vocab-granularity", train.granularity)
      ->transform(CLI::CheckedTransformer(kGranularities, CLI::ignore_case))
      ->capture_default_str();
  train_cmd->add_flag("--verbose", train.verbose);

  TokenizeArgs tok;
  auto* tok_cmd = app.add_subcommand("tokenize", "Encode stdin to stdout");
  tok_cmd->add_option("--vocab", tok.vocab)->required();
  tok_cmd->add_option("--mode,--input-granularity", tok.mode)
      ->transform(CLI::CheckedTransformer(kGranularities, CLI::ignore_case))
      ->capture_default_str();
  auto* ids_flag = tok_cmd->add_flag("--ids", tok.ids, "Print piece ids");
  auto* pieces_flag =
      tok_cmd->add_flag("--pieces", tok.pieces, "Print piece surfaces");
  ids_flag->excludes(pieces_flag);

  BuildDatasetArgs build;
  auto* build_cmd =
      app.add_subcommand("build-dataset", "Generate masked-LM training shards");
  build_cmd->add_option("--vocab", build.vocab)->required();
  build_cmd->add_option("--input", build.input)->required();
  build_cmd->add_option("--out", build.out)->required();
  build_cmd->add_option("--max-len", build.max_len)->capture_default_str();
  build_cmd->add_option("--mask-rate", build.mask_rate)->capture_default_str();
  build_cmd->add_option("--cmlm-rate", build.cmlm_rate)->capture_default_str();
  build_cmd->add_option("--ngram-probs", build.ngram_probs)
      ->capture_default_str();
  build_cmd->add_option("--action-probs", build.action_probs)
      ->capture_default_str();
  build_cmd->add_option("--task", build.task)
      ->transform(CLI::CheckedTransformer(kTasks, CLI::ignore_case))
      ->capture_default_str();
  build_cmd->add_option("--seed", build.seed)->capture_default_str();
  build_cmd->add_option("--workers", build.workers)->capture_default_str();
  build_cmd->add_option("--shard-size", build.shard_size)
      ->capture_default_str();

  DatasetArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Masking statistics as JSON");
  stats_cmd->add_option("--dataset", stats.dataset)->required();
  stats_cmd->add_option("--vocab", stats.vocab);

  DatasetArgs inspect;
  auto* inspect_cmd = app.add_subcommand("inspect", "Show the first examples");
  inspect_cmd->add_option("--dataset", inspect.dataset)->required();
  inspect_cmd->add_option("--vocab", inspect.vocab);
  inspect_cmd->add_option("--n", inspect.n)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (*train_cmd) return TrainVocab(train, err);
    if (*tok_cmd) return Tokenize(tok, in, out);
    if (*build_cmd) return BuildDatasetCmd(build, err);
    if (*stats_cmd) return Stats(stats, out);
    if (*inspect_cmd) return Inspect(inspect, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace mixgran::cli
