#pragma once

#include "dop/fragment.hpp"
#include "dop/numeric.hpp"
#include "dop/treebank.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dop {

struct FragmentEntry {
  Fragment fragment;
  std::uint64_t count = 0;
};

// All fragments of one corpus, grouped by root label (the substitution class),
// keyed by canonical serialization. std::map throughout so every iteration
// order is the sorted one — file output and probability sums stay stable.
struct FragmentBank {
  std::optional<int> max_depth;  // nullopt = unbounded extraction
  std::map<std::string, std::map<std::string, FragmentEntry>> classes;
  std::map<std::string, std::uint64_t> class_totals;  // token counts per class

  // Corpus-level metadata carried for matching and smoothing.
  std::set<std::string> vocabulary;  // distinct terminal words
  std::set<std::string> preterminals;
  std::map<std::string, std::set<std::string>> word_tags;
  std::map<std::string, std::uint64_t> root_counts;  // corpus tree roots

  std::size_t vocab_size() const { return vocabulary.size(); }
  const FragmentEntry* find(const std::string& root, const std::string& key) const;
  std::uint64_t total_fragment_tokens() const;
  std::uint64_t distinct_fragments() const;
  std::string default_start_label() const;  // most frequent corpus root
};

// Multiset of fragments of one tree: every subtree rooted at an internal node,
// with every combination of cutting or expanding its internal descendants,
// bounded by max_depth. Keys are canonical serializations.
std::map<std::string, FragmentEntry> extract_fragments(const Tree& tree,
                                                       std::optional<int> max_depth);

FragmentBank build_bank(const Corpus& corpus, std::optional<int> max_depth);

// Count / class token total; nullopt for fragments absent from the bank.
std::optional<Rational> substitution_probability(const FragmentBank& bank,
                                                 const Fragment& fragment);

// Text format, byte-stable: header lines, then one sorted record per fragment.
void save_bank(const FragmentBank& bank, std::ostream& out);
FragmentBank load_bank(std::istream& in);
void save_bank_file(const FragmentBank& bank, const std::string& path);
FragmentBank load_bank_file(const std::string& path);

}  // namespace dop
