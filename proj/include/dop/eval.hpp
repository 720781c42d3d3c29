#pragma once

#include "dop/tree.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace dop {

using BracketSpan = std::pair<std::size_t, std::size_t>;  // [start, end) over the yield

struct BracketPolicy {
  bool exclude_width_one = true;  // single-word constituents carry no signal
  bool include_full_span = true;  // the root's whole-sentence bracket
};

// Spans of the internal constituents per policy. Unary chains over one span
// contribute a single bracket (sets, not multisets).
std::set<BracketSpan> extract_brackets(const Tree& tree, const BracketPolicy& policy = {});

// Purely positional: overlap without nesting.
bool crosses(const BracketSpan& a, const BracketSpan& b);

// Structural equality including labels; throws on different yield lengths.
bool exact_match(const Tree& candidate, const Tree& gold);

struct SentenceOutcome {
  bool no_parse = false;
  bool exact = false;
  bool zero_crossings = false;
  std::size_t brackets = 0;           // candidate brackets
  std::size_t crossing_brackets = 0;  // of which cross some gold bracket
};

struct ScoreSummary {
  double parse_accuracy = 0.0;       // % exact matches
  double sentence_accuracy = 0.0;    // % sentences with zero crossing brackets
  double bracketing_accuracy = 0.0;  // % candidate brackets that do not cross
  bool bracketing_undefined = false;  // no candidate produced any bracket
  std::size_t n_sentences = 0;
  std::size_t n_no_parse = 0;
  std::vector<SentenceOutcome> sentences;
};

// Candidates align with golds; a missing candidate is a no-parse, scoring 0 on
// parse/sentence accuracy and contributing no brackets.
ScoreSummary score_set(const std::vector<std::optional<Tree>>& candidates,
                       const std::vector<Tree>& golds, const BracketPolicy& policy = {});

}  // namespace dop
