#include "dop/treebank.hpp"

#include "dop/error.hpp"
#include "dop/rng.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace dop {

namespace {

std::optional<Tree> prune_ignored(const Tree& t, const std::set<std::string>& ignore) {
  bool droppable = t.leaf() || t.kind == SymbolKind::Preterminal;
  if (droppable && ignore.count(t.label)) return std::nullopt;
  Tree out;
  out.label = t.label;
  out.kind = t.kind;
  for (const Tree& c : t.children) {
    if (auto kept = prune_ignored(c, ignore)) out.children.push_back(std::move(*kept));
  }
  if (out.children.empty() && !t.leaf()) {
    // A preterminal that lost its terminal stays as a tag leaf; an emptied
    // phrase node disappears.
    if (t.kind != SymbolKind::Preterminal) return std::nullopt;
  }
  return out;
}

void collect_terminals(const Tree& t, std::set<std::string>& out) {
  if (t.kind == SymbolKind::Terminal) {
    out.insert(t.label);
    return;
  }
  for (const Tree& c : t.children) collect_terminals(c, out);
}

}  // namespace

Corpus corpus_from_text(std::string_view text, std::string name,
                        const CorpusOptions& options, std::size_t* dropped_trees) {
  Corpus corpus;
  corpus.name = std::move(name);
  std::size_t dropped = 0;
  for (Tree& t : parse_tree_stream(text)) {
    if (options.ignore_labels.empty()) {
      corpus.trees.push_back(std::move(t));
      continue;
    }
    auto kept = prune_ignored(t, options.ignore_labels);
    if (kept && (t.leaf() || !kept->leaf())) {
      validate_tree(*kept);
      corpus.trees.push_back(std::move(*kept));
    } else {
      ++dropped;
    }
  }
  if (dropped_trees) *dropped_trees = dropped;
  return corpus;
}

Corpus load_corpus(const std::string& path, const CorpusOptions& options,
                   std::size_t* dropped_trees) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return corpus_from_text(buf.str(), path, options, dropped_trees);
}

std::pair<Corpus, Corpus> random_split(const Corpus& corpus, const SplitSpec& spec) {
  if (spec.n_train + spec.n_test > corpus.trees.size())
    throw Error("split sizes exceed corpus size (" + std::to_string(spec.n_train) + "+" +
                std::to_string(spec.n_test) + " > " + std::to_string(corpus.trees.size()) + ")");
  std::vector<std::size_t> order(corpus.trees.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(spec.seed);
  deterministic_shuffle(order, rng);

  std::vector<std::size_t> train_idx(order.begin(), order.begin() + spec.n_train);
  std::vector<std::size_t> test_idx(order.begin() + spec.n_train,
                                    order.begin() + spec.n_train + spec.n_test);
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());

  std::pair<Corpus, Corpus> out;
  out.first.name = corpus.name + "#train";
  out.second.name = corpus.name + "#test";
  for (std::size_t i : train_idx) out.first.trees.push_back(corpus.trees[i]);
  for (std::size_t i : test_idx) out.second.trees.push_back(corpus.trees[i]);
  return out;
}

std::set<std::string> corpus_vocabulary(const Corpus& corpus) {
  std::set<std::string> vocab;
  for (const Tree& t : corpus.trees) collect_terminals(t, vocab);
  return vocab;
}

Corpus strip_corpus(const Corpus& corpus) {
  Corpus out;
  out.name = corpus.name;
  out.trees.reserve(corpus.trees.size());
  for (const Tree& t : corpus.trees) out.trees.push_back(strip_to_pos(t));
  return out;
}

void write_manifest(const Corpus& corpus, std::ostream& out) {
  for (std::size_t i = 0; i < corpus.trees.size(); ++i) {
    out << i << '\t' << yield_size(corpus.trees[i]) << '\t' << serialize(corpus.trees[i])
        << '\n';
  }
}

}  // namespace dop
