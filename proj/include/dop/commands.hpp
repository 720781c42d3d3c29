#pragma once

#include "dop/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dop {

// Exit codes shared by all commands.
enum ExitCode : int {
  kExitOk = 0,
  kExitNoParse = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

// Build a fragment bank from the configured corpus and write it (plus an
// optional corpus manifest).
int cmd_extract(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parse whitespace-tokenized sentences (one per line) against a bank; emits a
// JSON record per sentence per selector. Returns kExitNoParse if any sentence
// failed to parse.
int cmd_parse(const RunConfig& config, const std::vector<std::string>& sentence_lines,
              std::ostream& out, std::ostream& err);

struct GtTableRequest {
  std::string class_label;     // from the configured bank/corpus...
  std::string histogram_path;  // ...or from an external r<TAB>N_r histogram
  std::string n0;              // unseen-type count for external histograms
};

int cmd_gt_table(const RunConfig& config, const GtTableRequest& request, std::ostream& out,
                 std::ostream& err);

// Full split/parse/score protocol; writes report.txt, records.tsv and
// resolved_config.json into the configured output directory.
int cmd_experiment(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dop
