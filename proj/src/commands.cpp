#include "dop/commands.hpp"

#include "dop/disambig.hpp"
#include "dop/error.hpp"
#include "dop/experiment.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace dop {

namespace {

using nlohmann::json;

int map_exception(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (dynamic_cast<const ConfigError*>(&e)) return kExitUsage;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const FormatError*>(&e) || dynamic_cast<const TreeParseError*>(&e))
    return kExitIo;  // malformed input data
  if (dynamic_cast<const std::invalid_argument*>(&e)) return kExitUsage;
  return kExitIo;
}

Corpus load_configured_corpus(const RunConfig& config) {
  if (config.corpus_path.empty()) throw ConfigError("no corpus configured");
  Corpus c = load_corpus(config.corpus_path, CorpusOptions{config.ignore_labels});
  if (config.input_form == "pos") c = strip_corpus(c);
  return c;
}

FragmentBank bank_for_parsing(const RunConfig& config) {
  if (!config.bank_path.empty()) return load_bank_file(config.bank_path);
  if (!config.corpus_path.empty())
    return build_bank(load_configured_corpus(config), config.max_depth);
  throw ConfigError("parsing needs either a bank file or a corpus");
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> words;
  std::istringstream in(line);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

}  // namespace

int cmd_extract(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_config(config, /*wants_splits=*/false, /*wants_sampling=*/false);
    if (config.bank_path.empty()) throw ConfigError("extract needs a bank output path");
    Corpus corpus = load_configured_corpus(config);
    FragmentBank bank = build_bank(corpus, config.max_depth);
    save_bank_file(bank, config.bank_path);
    if (!config.manifest_path.empty()) {
      std::ostringstream manifest;
      write_manifest(corpus, manifest);
      write_text_file(config.manifest_path, manifest.str());
    }
    out << "trees\t" << corpus.trees.size() << "\n";
    out << "classes\t" << bank.classes.size() << "\n";
    out << "fragment_types\t" << bank.distinct_fragments() << "\n";
    out << "fragment_tokens\t" << bank.total_fragment_tokens() << "\n";
    out << "vocabulary\t" << bank.vocab_size() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return map_exception(e, err);
  }
}

int cmd_parse(const RunConfig& config, const std::vector<std::string>& sentence_lines,
              std::ostream& out, std::ostream& err) {
  try {
    validate_config(config, /*wants_splits=*/false, /*wants_sampling=*/true);
    FragmentBank bank = bank_for_parsing(config);
    bool smoothed = config.mode == ParseMode::Dop3 || config.mode == ParseMode::Dop4;
    AdjustedModel adjusted;
    if (smoothed) adjusted = build_adjusted_model(bank, config.gt);
    ScoreModel model = smoothed
                           ? ScoreModel::good_turing(bank, adjusted)
                           : ScoreModel::relative_frequency(bank, config.seed_weight);
    std::optional<Lexicon> lexicon;
    if (config.mode == ParseMode::Dop4) {
      TagsetMap map = config.tagset_map_path.empty()
                          ? TagsetMap::identity_map()
                          : load_tagset_map_file(config.tagset_map_path);
      lexicon = load_lexicon_file(config.lexicon_path, map, bank.preterminals,
                                  LexiconOptions{config.lexicon_fold_case});
    }
    CompiledBank compiled(bank);

    std::ofstream forest_dump;
    if (!config.forest_dump_path.empty()) {
      forest_dump.open(config.forest_dump_path, std::ios::binary);
      if (!forest_dump) throw IoError("cannot write '" + config.forest_dump_path + "'");
    }

    bool any_no_parse = false;
    std::size_t index = 0;
    for (const std::string& line : sentence_lines) {
      std::vector<std::string> sentence = tokenize(line);
      if (sentence.empty()) continue;
      json record;
      record["index"] = index;
      record["sentence"] = line;
      try {
        MatchPolicy policy =
            classify_positions(sentence, bank, lexicon ? &*lexicon : nullptr,
                               config.mode, ClassifyOptions{config.ambiguous_tags});
        DerivationForest forest =
            build_forest(compiled, sentence, policy, ParserOptions{config.start_label});
        if (forest_dump.is_open()) dump_forest(forest, forest_dump);
        Rng rng(Rng::mix(config.seed.value_or(0), 0, index));
        auto result = run_selector(forest, model, config, rng);
        if (!result) {
          record["status"] = "no-parse";
          any_no_parse = true;
        } else {
          record["status"] = "ok";
          record["tree"] = serialize(result->tree);
          record["score"] = result->score;
          record["method"] = select_method_name(result->method);
          if (result->method == SelectMethod::MonteCarlo) {
            record["samples"] = result->samples_used;
            record["standard_error"] = result->standard_error;
          }
        }
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        record["status"] = "no-parse";
        record["reason"] = e.what();
        any_no_parse = true;
      }
      out << record.dump() << "\n";
      ++index;
    }
    return any_no_parse ? kExitNoParse : kExitOk;
  } catch (const std::exception& e) {
    return map_exception(e, err);
  }
}

int cmd_gt_table(const RunConfig& config, const GtTableRequest& request, std::ostream& out,
                 std::ostream& err) {
  try {
    FreqOfFreqs fof;
    PopulationEstimate pop;
    if (!request.histogram_path.empty()) {
      // External histogram: lines "r<TAB>N_r", plus an explicit N_0.
      if (request.n0.empty())
        throw ConfigError("an external histogram needs the unseen-type count (n0)");
      std::ifstream in(request.histogram_path, std::ios::binary);
      if (!in) throw IoError("cannot open histogram '" + request.histogram_path + "'");
      fof.class_label = request.histogram_path;
      std::string line;
      std::size_t lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::uint64_t r = 0, nr = 0;
        if (!(row >> r >> nr))
          throw FormatError("histogram line " + std::to_string(lineno) + ": expected 'r N_r'");
        if (r == 0) throw FormatError("histogram line " + std::to_string(lineno) +
                                      ": r=0 belongs in n0, not the histogram");
        fof.table[r] = nr;
        fof.total_tokens += r * nr;
        fof.observed_types += nr;
      }
      pop.class_label = fof.class_label;
      if (request.n0.empty() ||
          request.n0.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError("n0 must be a nonnegative integer, got '" + request.n0 + "'");
      pop.unseen_types = BigInt(request.n0);
      pop.total_types = pop.unseen_types + fof.observed_types;
    } else {
      if (request.class_label.empty())
        throw ConfigError("gt-table needs a class label or an external histogram");
      FragmentBank bank = bank_for_parsing(config);
      fof = freq_of_freqs(bank, request.class_label);
      pop = estimate_total_types(bank, request.class_label, bank.vocab_size());
    }
    out << gt_table_text(fof, pop, config.gt);
    return kExitOk;
  } catch (const std::exception& e) {
    return map_exception(e, err);
  }
}

int cmd_experiment(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_config(config, /*wants_splits=*/true, /*wants_sampling=*/true);
    if (config.output_dir.empty()) throw ConfigError("experiment needs an output directory");
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + config.output_dir + "'");

    ExperimentReport report = run_experiment(config);
    std::string text = experiment_report_text(report);
    std::ostringstream records;
    experiment_report_records(report, records);

    std::filesystem::path dir(config.output_dir);
    write_text_file((dir / "report.txt").string(), text);
    write_text_file((dir / "records.tsv").string(), records.str());
    write_text_file((dir / "resolved_config.json").string(), config_to_json(config));
    out << text;
    return kExitOk;
  } catch (const std::exception& e) {
    return map_exception(e, err);
  }
}

}  // namespace dop
