#include "dop/experiment.hpp"

#include "dop/disambig.hpp"
#include "dop/error.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace dop {

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fixed6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// Lexical status of a test sentence against the training bank, read off the
// gold tree. In tag-string runs the tokens are the tags themselves.
SentenceCategory categorize(const Tree& gold, const FragmentBank& bank) {
  bool pos_tokens = bank.vocabulary.empty();
  bool any_unknown = false;
  bool any_unknown_category = false;
  auto walk = [&](auto&& self, const Tree& t) -> void {
    if (t.kind == SymbolKind::Preterminal) {
      if (t.leaf()) {
        if (pos_tokens && !bank.preterminals.count(t.label)) any_unknown = true;
        return;
      }
      const std::string& word = t.children[0].label;
      if (!bank.vocabulary.count(word)) {
        any_unknown = true;
      } else {
        auto it = bank.word_tags.find(word);
        if (it == bank.word_tags.end() || !it->second.count(t.label))
          any_unknown_category = true;
      }
      return;
    }
    for (const Tree& c : t.children) self(self, c);
  };
  walk(walk, gold);
  if (any_unknown) return SentenceCategory::WithUnknown;
  if (any_unknown_category) return SentenceCategory::UnknownCategoryOnly;
  return SentenceCategory::FullyKnown;
}

template <class Num>
ParseResult select_parse(const DerivationForest& forest, const ScoreModel& model,
                         const RunConfig& config, SelectMethod method, Rng rng) {
  auto scores = resolve_scores<Num>(forest, model);
  switch (method) {
    case SelectMethod::ViterbiDerivation: {
      auto [d, p] = most_probable_derivation(forest, scores);
      ParseResult r;
      r.tree = compose_derivation(d);
      r.score = to_double(p);
      r.method = SelectMethod::ViterbiDerivation;
      return r;
    }
    case SelectMethod::MonteCarlo:
      return most_probable_parse_mc(forest, scores, config.mc_samples, rng,
                                    config.sample_scheme);
    case SelectMethod::Exact:
      return most_probable_parse_exact<Num>(forest, model, config.enumeration_limit);
  }
  throw std::invalid_argument("bad selector");
}

}  // namespace

std::optional<ParseResult> run_selector(const DerivationForest& forest,
                                        const ScoreModel& model, const RunConfig& config,
                                        Rng rng) {
  if (forest.empty()) return std::nullopt;
  SelectMethod method = select_method_from_name(config.selector);
  return config.numeric == "rational"
             ? select_parse<Rational>(forest, model, config, method, rng)
             : select_parse<LogDouble>(forest, model, config, method, rng);
}

std::string sentence_category_name(SentenceCategory c) {
  switch (c) {
    case SentenceCategory::FullyKnown: return "fully-known";
    case SentenceCategory::UnknownCategoryOnly: return "unknown-category-only";
    case SentenceCategory::WithUnknown: return "with-unknown-words";
  }
  throw std::invalid_argument("bad category");
}

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

ExperimentReport run_experiment(const RunConfig& config) {
  validate_config(config, /*wants_splits=*/true, /*wants_sampling=*/true);
  bool pos = config.input_form == "pos";
  bool explicit_split = !config.train_path.empty();
  CorpusOptions copts{config.ignore_labels};

  Corpus full, train_file, test_file;
  if (explicit_split) {
    train_file = load_corpus(config.train_path, copts);
    test_file = load_corpus(config.test_path, copts);
  } else {
    full = load_corpus(config.corpus_path, copts);
    if (full.trees.size() < config.n_train + config.n_test)
      throw ConfigError("corpus holds " + std::to_string(full.trees.size()) +
                        " trees; split needs " +
                        std::to_string(config.n_train + config.n_test));
  }

  bool smoothed = config.mode == ParseMode::Dop3 || config.mode == ParseMode::Dop4;

  ExperimentReport report;
  std::vector<double> parse_vals, sentence_vals, bracket_vals;

  for (std::size_t split = 0; split < config.n_splits; ++split) {
    Corpus train, test;
    if (explicit_split) {
      train = train_file;
      test = test_file;
    } else {
      SplitSpec spec{config.n_train, config.n_test, Rng::mix(*config.seed, split)};
      std::tie(train, test) = random_split(full, spec);
    }
    if (pos) {
      train = strip_corpus(train);
      test = strip_corpus(test);
    }

    FragmentBank bank = build_bank(train, config.max_depth);
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
    ParserOptions popts{config.start_label};
    ClassifyOptions classify_opts{config.ambiguous_tags};

    std::vector<std::optional<Tree>> candidates;
    std::vector<Tree> golds;
    for (std::size_t s = 0; s < test.trees.size(); ++s) {
      const Tree& gold = test.trees[s];
      golds.push_back(gold);
      std::optional<Tree> candidate;
      try {
        std::vector<std::string> sentence = tree_yield(gold);
        MatchPolicy policy =
            classify_positions(sentence, bank, lexicon ? &*lexicon : nullptr,
                               config.mode, classify_opts);
        DerivationForest forest = build_forest(compiled, sentence, policy, popts);
        Rng rng(Rng::mix(config.seed.value_or(0), split, s));
        if (auto result = run_selector(forest, model, config, rng))
          candidate = std::move(result->tree);
      } catch (const Error&) {
        candidate.reset();  // per-sentence failures count as no-parse
      }
      candidates.push_back(std::move(candidate));
    }

    SplitResult sr;
    sr.index = split;
    sr.scores = score_set(candidates, golds, config.brackets);
    for (std::size_t s = 0; s < golds.size(); ++s) {
      CategoryTally& tally = sr.categories[categorize(golds[s], bank)];
      ++tally.count;
      tally.exact += sr.scores.sentences[s].exact ? 1 : 0;
      tally.no_parse += sr.scores.sentences[s].no_parse ? 1 : 0;
    }

    parse_vals.push_back(sr.scores.parse_accuracy);
    sentence_vals.push_back(sr.scores.sentence_accuracy);
    bracket_vals.push_back(sr.scores.bracketing_accuracy);
    report.total_no_parse += sr.scores.n_no_parse;
    report.bracketing_undefined_any |= sr.scores.bracketing_undefined;
    for (const auto& [cat, tally] : sr.categories) {
      CategoryTally& pooled = report.categories[cat];
      pooled.count += tally.count;
      pooled.exact += tally.exact;
      pooled.no_parse += tally.no_parse;
    }
    report.splits.push_back(std::move(sr));
  }

  report.parse = mean_std(parse_vals);
  report.sentence = mean_std(sentence_vals);
  report.bracketing = mean_std(bracket_vals);
  return report;
}

std::string experiment_report_text(const ExperimentReport& report) {
  std::ostringstream out;
  out << "split\tsentences\tno-parse\tparse%\tsentence%\tbracketing%\n";
  for (const SplitResult& sr : report.splits) {
    out << sr.index << '\t' << sr.scores.n_sentences << '\t' << sr.scores.n_no_parse << '\t'
        << fixed2(sr.scores.parse_accuracy) << '\t' << fixed2(sr.scores.sentence_accuracy)
        << '\t' << fixed2(sr.scores.bracketing_accuracy);
    if (sr.scores.bracketing_undefined) out << " (no brackets)";
    out << '\n';
  }
  out << "mean\t\t\t" << fixed2(report.parse.mean) << '\t' << fixed2(report.sentence.mean)
      << '\t' << fixed2(report.bracketing.mean) << '\n';
  out << "stddev\t\t\t" << fixed2(report.parse.stddev) << '\t'
      << fixed2(report.sentence.stddev) << '\t' << fixed2(report.bracketing.stddev) << '\n';
  out << '\n';
  out << "category\tsentences\texact\tno-parse\tparse%\n";
  CategoryTally all;
  for (const auto& [cat, tally] : report.categories) {
    all.count += tally.count;
    all.exact += tally.exact;
    all.no_parse += tally.no_parse;
  }
  out << "all\t" << all.count << '\t' << all.exact << '\t' << all.no_parse << '\t'
      << fixed2(all.parse_accuracy()) << '\n';
  for (SentenceCategory cat :
       {SentenceCategory::FullyKnown, SentenceCategory::UnknownCategoryOnly,
        SentenceCategory::WithUnknown}) {
    auto it = report.categories.find(cat);
    CategoryTally tally = it == report.categories.end() ? CategoryTally{} : it->second;
    out << sentence_category_name(cat) << '\t' << tally.count << '\t' << tally.exact << '\t'
        << tally.no_parse << '\t' << fixed2(tally.parse_accuracy()) << '\n';
  }
  return out.str();
}

void experiment_report_records(const ExperimentReport& report, std::ostream& out) {
  for (const SplitResult& sr : report.splits) {
    out << "parse_accuracy\t" << sr.index << '\t' << fixed6(sr.scores.parse_accuracy) << '\n';
    out << "sentence_accuracy\t" << sr.index << '\t' << fixed6(sr.scores.sentence_accuracy)
        << '\n';
    out << "bracketing_accuracy\t" << sr.index << '\t'
        << fixed6(sr.scores.bracketing_accuracy) << '\n';
    out << "no_parse\t" << sr.index << '\t' << sr.scores.n_no_parse << '\n';
  }
  out << "parse_accuracy\tmean\t" << fixed6(report.parse.mean) << '\n';
  out << "parse_accuracy\tstddev\t" << fixed6(report.parse.stddev) << '\n';
  out << "sentence_accuracy\tmean\t" << fixed6(report.sentence.mean) << '\n';
  out << "sentence_accuracy\tstddev\t" << fixed6(report.sentence.stddev) << '\n';
  out << "bracketing_accuracy\tmean\t" << fixed6(report.bracketing.mean) << '\n';
  out << "bracketing_accuracy\tstddev\t" << fixed6(report.bracketing.stddev) << '\n';
}

}  // namespace dop
