#pragma once

#include "dop/config.hpp"
#include "dop/disambig.hpp"
#include "dop/eval.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dop {

// Test sentences are partitioned by lexical status against the training bank:
// unknown = word never seen; unknown-category = word seen, but never with the
// tag the gold tree assigns it here.
enum class SentenceCategory : std::uint8_t { FullyKnown, UnknownCategoryOnly, WithUnknown };
std::string sentence_category_name(SentenceCategory c);

struct CategoryTally {
  std::size_t count = 0;
  std::size_t exact = 0;
  std::size_t no_parse = 0;

  double parse_accuracy() const {
    return count ? 100.0 * static_cast<double>(exact) / static_cast<double>(count) : 0.0;
  }
};

struct SplitResult {
  std::size_t index = 0;
  ScoreSummary scores;
  std::map<SentenceCategory, CategoryTally> categories;
};

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // sample (n-1); 0 for a single split
};

struct ExperimentReport {
  std::vector<SplitResult> splits;
  MeanStd parse, sentence, bracketing;
  std::size_t total_no_parse = 0;
  bool bracketing_undefined_any = false;
  std::map<SentenceCategory, CategoryTally> categories;  // pooled over splits
};

MeanStd mean_std(const std::vector<double>& values);

// One forest through the configured selector and numeric regime; nullopt for
// an empty forest. The rng only matters for the Monte Carlo selector.
std::optional<ParseResult> run_selector(const DerivationForest& forest,
                                        const ScoreModel& model, const RunConfig& config,
                                        Rng rng);

// The full protocol: for each split, build the bank from the training side,
// parse every test sentence in the configured mode, score against gold.
ExperimentReport run_experiment(const RunConfig& config);

// Aligned text tables (per-split metrics + category breakdown).
std::string experiment_report_text(const ExperimentReport& report);
// Line-delimited records "metric<TAB>split<TAB>value" for downstream plotting.
void experiment_report_records(const ExperimentReport& report, std::ostream& out);

}  // namespace dop
