#pragma once

#include "dop/disambig.hpp"
#include "dop/eval.hpp"
#include "dop/model.hpp"
#include "dop/parser.hpp"
#include "dop/smoothing.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dop {

// One configuration drives every command; unused fields are ignored by
// commands that do not need them. JSON on disk, flag overrides on top.
struct RunConfig {
  // Data
  std::string corpus_path;
  std::string train_path;  // explicit split (overrides random splitting)
  std::string test_path;
  std::set<std::string> ignore_labels;
  std::string input_form = "words";  // words | pos (strip trees to tag strings)

  // Bank
  std::optional<int> max_depth;  // nullopt = unbounded
  std::string bank_path;

  // Parsing
  ParseMode mode = ParseMode::Dop1;
  std::string start_label;  // empty = most frequent training root
  std::set<std::string> ambiguous_tags{"NN", "NNS", "NNP", "NNPS", "VB", "VBD",
                                       "VBG", "VBN", "VBP", "VBZ"};
  std::string lexicon_path;
  std::string tagset_map_path;
  bool lexicon_fold_case = true;

  // Smoothing
  GtPolicy gt;

  // Model / disambiguation
  SeedWeight seed_weight = SeedWeight::One;
  std::string numeric = "rational";  // rational | double
  std::string selector = "viterbi-derivation";
  std::uint64_t mc_samples = 1000;
  SampleScheme sample_scheme = SampleScheme::InsideWeighted;
  std::uint64_t enumeration_limit = 10000;

  // Experiment
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t n_splits = 1;
  std::optional<std::uint64_t> seed;

  // Evaluation
  BracketPolicy brackets;

  // Output
  std::string output_dir;
  std::string forest_dump_path;
  std::string manifest_path;
};

RunConfig load_config_file(const std::string& path);
RunConfig config_from_json_text(const std::string& text, const std::string& origin);
std::string config_to_json(const RunConfig& config);

// "key=value" overrides using the JSON field names; lists comma-separated.
void apply_override(RunConfig& config, const std::string& key, const std::string& value);

// Mode- and command-dependent requirements (dop4 needs a lexicon; randomized
// steps need a seed; ...). `wants_splits` / `wants_sampling` say which checks
// apply.
void validate_config(const RunConfig& config, bool wants_splits, bool wants_sampling);

}  // namespace dop
