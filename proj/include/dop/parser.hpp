#pragma once

#include "dop/bank.hpp"
#include "dop/fragment.hpp"
#include "dop/lexicon.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dop {

// The four treatments of input words:
//   Dop1 — corpus fragments only; any unknown word blocks parsing
//   Dop2 — unknown words may stand under any preterminal of the bank
//   Dop3 — mismatch: lexical leaves may rewrite to the input word (wildcards)
//   Dop4 — Dop3 restricted by an external dictionary that pre-tags its words
enum class ParseMode : std::uint8_t { Dop1, Dop2, Dop3, Dop4 };

ParseMode parse_mode_from_name(const std::string& name);
std::string parse_mode_name(ParseMode mode);

// Per-position matching permissions, derived from the mode before parsing.
struct MatchPolicy {
  // Positions where a fragment's lexical leaf may match a different word.
  std::set<std::size_t> wildcard_positions;
  // Positions seeded with candidate tags (unknown words under Dop2, dictionary
  // words under Dop4).
  std::map<std::size_t, std::set<std::string>> open_tag_positions;
};

struct ClassifyOptions {
  // Dop3: known words get the wildcard treatment too when one of their corpus
  // tags is in this set (suspected tagging gaps). Unknown words always do.
  std::set<std::string> ambiguous_tags;
};

MatchPolicy classify_positions(const std::vector<std::string>& sentence,
                               const FragmentBank& bank, const Lexicon* lexicon,
                               ParseMode mode, const ClassifyOptions& options = {});

// One way of expanding a forest node: a fragment whose open slots are filled
// by the child nodes, in frontier order. `erased_key` strips wildcard marks —
// it is the identity under which the fragment is counted and scored.
struct Application {
  Fragment fragment;
  std::string erased_key;
  std::vector<std::uint32_t> children;
  std::uint32_t seeded_tag_count = 0;  // > 0 for policy-seeded lexical apps
};

struct ForestNode {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  std::string label;
  std::vector<Application> apps;
};

// Packed AND/OR forest over sentence spans. Nodes are sorted by
// (begin, end, label); `topo` lists ids children-before-parents.
struct DerivationForest {
  std::vector<std::string> sentence;
  std::vector<ForestNode> nodes;
  std::optional<std::uint32_t> root;
  std::vector<std::uint32_t> topo;

  bool empty() const { return !root.has_value(); }
};

// Matching tables compiled once per bank; borrows the bank, which must outlive
// the compiled form.
class CompiledBank {
 public:
  explicit CompiledBank(const FragmentBank& bank);

  const FragmentBank& bank() const { return *bank_; }
  const std::string& default_start() const { return default_start_; }

  struct Entry {
    const Fragment* fragment;
    std::string key;
    // Frontier in left-to-right order: pointers into *fragment.
    std::vector<const FragNode*> frontier;
    std::vector<std::string> words;  // lexical frontier, sorted (prefilter)
  };

  const std::vector<std::string>& class_labels() const { return class_labels_; }
  const std::vector<Entry>& entries(const std::string& label) const;

 private:
  const FragmentBank* bank_;
  std::string default_start_;
  std::vector<std::string> class_labels_;
  std::map<std::string, std::vector<Entry>> by_class_;
};

struct ParserOptions {
  std::string start_label;  // empty = bank's most frequent corpus root
};

DerivationForest build_forest(const CompiledBank& bank,
                              const std::vector<std::string>& sentence,
                              const MatchPolicy& policy,
                              const ParserOptions& options = {});
DerivationForest build_forest(const FragmentBank& bank,
                              const std::vector<std::string>& sentence,
                              const MatchPolicy& policy,
                              const ParserOptions& options = {});

// One line per application: span, label, application index, fragment (with
// wildcard marks), child node ids.
void dump_forest(const DerivationForest& forest, std::ostream& out);

}  // namespace dop
