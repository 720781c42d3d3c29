#include "dop/eval.hpp"

#include "dop/error.hpp"

#include <stdexcept>

namespace dop {

namespace {

void brackets_into(const Tree& t, std::size_t begin, std::size_t total,
                   const BracketPolicy& policy, std::set<BracketSpan>& out) {
  if (t.leaf()) return;
  std::size_t width = yield_size(t);
  std::size_t end = begin + width;
  bool keep = true;
  if (policy.exclude_width_one && width == 1) keep = false;
  if (!policy.include_full_span && begin == 0 && end == total) keep = false;
  if (keep) out.insert({begin, end});
  std::size_t at = begin;
  for (const Tree& c : t.children) {
    brackets_into(c, at, total, policy, out);
    at += yield_size(c);
  }
}

}  // namespace

std::set<BracketSpan> extract_brackets(const Tree& tree, const BracketPolicy& policy) {
  std::set<BracketSpan> out;
  brackets_into(tree, 0, yield_size(tree), policy, out);
  return out;
}

bool crosses(const BracketSpan& a, const BracketSpan& b) {
  return (a.first < b.first && b.first < a.second && a.second < b.second) ||
         (b.first < a.first && a.first < b.second && b.second < a.second);
}

bool exact_match(const Tree& candidate, const Tree& gold) {
  if (yield_size(candidate) != yield_size(gold))
    throw std::invalid_argument("exact_match on different yield lengths");
  return candidate == gold;
}

ScoreSummary score_set(const std::vector<std::optional<Tree>>& candidates,
                       const std::vector<Tree>& golds, const BracketPolicy& policy) {
  if (candidates.size() != golds.size())
    throw std::invalid_argument("candidate/gold sequences differ in length");

  ScoreSummary s;
  s.n_sentences = candidates.size();
  std::size_t exact_hits = 0;
  std::size_t clean_sentences = 0;
  std::size_t total_brackets = 0;
  std::size_t total_crossing = 0;

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    SentenceOutcome outcome;
    if (!candidates[i]) {
      outcome.no_parse = true;
      ++s.n_no_parse;
      s.sentences.push_back(outcome);
      continue;
    }
    const Tree& cand = *candidates[i];
    outcome.exact = exact_match(cand, golds[i]);
    std::set<BracketSpan> cb = extract_brackets(cand, policy);
    std::set<BracketSpan> gb = extract_brackets(golds[i], policy);
    outcome.brackets = cb.size();
    for (const BracketSpan& b : cb)
      for (const BracketSpan& g : gb)
        if (crosses(b, g)) {
          ++outcome.crossing_brackets;
          break;
        }
    outcome.zero_crossings = outcome.crossing_brackets == 0;
    exact_hits += outcome.exact ? 1 : 0;
    clean_sentences += outcome.zero_crossings ? 1 : 0;
    total_brackets += outcome.brackets;
    total_crossing += outcome.crossing_brackets;
    s.sentences.push_back(outcome);
  }

  if (s.n_sentences > 0) {
    s.parse_accuracy = 100.0 * static_cast<double>(exact_hits) / s.n_sentences;
    s.sentence_accuracy = 100.0 * static_cast<double>(clean_sentences) / s.n_sentences;
  }
  if (total_brackets > 0) {
    s.bracketing_accuracy =
        100.0 * static_cast<double>(total_brackets - total_crossing) / total_brackets;
  } else {
    s.bracketing_undefined = true;
    s.bracketing_accuracy = 0.0;
  }
  return s;
}

}  // namespace dop
