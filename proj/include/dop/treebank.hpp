#pragma once

#include "dop/tree.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dop {

struct Corpus {
  std::string name;
  std::vector<Tree> trees;
};

struct CorpusOptions {
  // Subtrees whose root is a leaf or a preterminal with one of these labels
  // are deleted (punctuation tags, trace tags and the like). Parents left
  // childless are deleted in cascade; trees emptied entirely are dropped.
  std::set<std::string> ignore_labels;
};

Corpus corpus_from_text(std::string_view text, std::string name,
                        const CorpusOptions& options = {},
                        std::size_t* dropped_trees = nullptr);
Corpus load_corpus(const std::string& path, const CorpusOptions& options = {},
                   std::size_t* dropped_trees = nullptr);

struct SplitSpec {
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::uint64_t seed = 0;
};

// Disjoint train/test samples drawn without replacement; deterministic in the
// seed, original corpus order restored within each side.
std::pair<Corpus, Corpus> random_split(const Corpus& corpus, const SplitSpec& spec);

// Distinct terminal words, sorted.
std::set<std::string> corpus_vocabulary(const Corpus& corpus);

Corpus strip_corpus(const Corpus& corpus);

// Line-delimited records: index, yield length, serialization.
void write_manifest(const Corpus& corpus, std::ostream& out);

}  // namespace dop
