// Command-line frontend: extract / parse / gt-table / experiment, all driven
// by one config file plus per-field override flags.

#include "dop/commands.hpp"
#include "dop/config.hpp"
#include "dop/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

// Flag names mirror the config file fields 1:1; values use the same syntax as
// the file (lists comma-separated, booleans true/false, "unbounded" allowed
// for max_depth).
const char* const kConfigKeys[] = {
    "corpus",         "train_corpus",      "test_corpus",     "ignore_labels",
    "input_form",     "max_depth",         "bank",            "mode",
    "start_label",    "ambiguous_tags",    "lexicon",         "tagset_map",
    "lexicon_fold_case", "gt_pure",        "gt_floor",        "seed_weight",
    "numeric",        "selector",          "mc_samples",      "sample_scheme",
    "enumeration_limit", "n_train",        "n_test",          "n_splits",
    "seed",           "exclude_width_one", "include_full_span", "output_dir",
    "forest_dump",    "manifest",
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

void add_config_flags(CLI::App* cmd, Overrides& overrides) {
  for (const char* key : kConfigKeys) {
    std::string name = key;
    cmd->add_option_function<std::string>(
        "--" + name,
        [&overrides, name](const std::string& value) {
          overrides.emplace_back(name, value);
        },
        "config override (same syntax as the config file)");
  }
}

dop::RunConfig resolve_config(const std::string& config_path, const Overrides& overrides) {
  dop::RunConfig config;
  if (!config_path.empty()) config = dop::load_config_file(config_path);
  for (const auto& [key, value] : overrides) dop::apply_override(config, key, value);
  return config;
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> read_sentence_lines(const std::string& path) {
  if (path.empty() || path == "-") return read_lines(std::cin);
  std::ifstream in(path);
  if (!in) throw dop::IoError("cannot open sentence file: " + path);
  return read_lines(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treebank-driven stochastic parsing engine"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "config file (JSON)")
      ->envname("DOP_CONFIG");

  Overrides overrides;
  int rc = dop::kExitOk;

  CLI::App* extract = app.add_subcommand(
      "extract", "build a fragment bank from the configured corpus");
  add_config_flags(extract, overrides);
  extract->callback([&] {
    rc = dop::cmd_extract(resolve_config(config_path, overrides), std::cout, std::cerr);
  });

  CLI::App* parse = app.add_subcommand(
      "parse", "parse tokenized sentences (one per line) against a bank");
  add_config_flags(parse, overrides);
  std::string sentence_path;
  parse->add_option("sentences", sentence_path,
                    "file of sentences, one per line ('-' or absent = stdin)");
  parse->callback([&] {
    rc = dop::cmd_parse(resolve_config(config_path, overrides),
                        read_sentence_lines(sentence_path), std::cout, std::cerr);
  });

  CLI::App* gt = app.add_subcommand(
      "gt-table", "print the frequency-adjustment table for a fragment class");
  add_config_flags(gt, overrides);
  dop::GtTableRequest request;
  gt->add_option("--class", request.class_label, "fragment class (root label)");
  gt->add_option("--histogram", request.histogram_path,
                 "external r<TAB>N_r histogram instead of a bank class");
  gt->add_option("--n0", request.n0, "unseen-type count for --histogram");
  gt->callback([&] {
    rc = dop::cmd_gt_table(resolve_config(config_path, overrides), request,
                           std::cout, std::cerr);
  });

  CLI::App* experiment = app.add_subcommand(
      "experiment", "run the full split/parse/score protocol");
  add_config_flags(experiment, overrides);
  experiment->callback([&] {
    rc = dop::cmd_experiment(resolve_config(config_path, overrides), std::cout, std::cerr);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int cli_rc = app.exit(e);
    return cli_rc == 0 ? dop::kExitOk : dop::kExitUsage;
  } catch (const dop::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dop::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dop::kExitIo;
  }
  return rc;
}
