#include "dop/config.hpp"

#include "dop/error.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace dop {

namespace {

using nlohmann::json;

std::set<std::string> string_set(const json& j, const std::string& key) {
  std::set<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw ConfigError("config field '" + key + "' must hold strings");
    out.insert(v.get<std::string>());
  }
  return out;
}

std::set<std::string> split_commas(const std::string& s) {
  std::set<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.insert(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.insert(cur);
  return out;
}

template <class T>
T integer_field(const json& v, const std::string& key) {
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw ConfigError("config field '" + key + "' must be an integer");
  return v.get<T>();
}

}  // namespace

RunConfig config_from_json_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("cannot parse config " + origin + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config " + origin + " must be a JSON object");

  RunConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "corpus") c.corpus_path = value.get<std::string>();
    else if (key == "train_corpus") c.train_path = value.get<std::string>();
    else if (key == "test_corpus") c.test_path = value.get<std::string>();
    else if (key == "ignore_labels") c.ignore_labels = string_set(value, key);
    else if (key == "input_form") c.input_form = value.get<std::string>();
    else if (key == "max_depth") {
      if (value.is_string() && value.get<std::string>() == "unbounded")
        c.max_depth = std::nullopt;
      else
        c.max_depth = integer_field<int>(value, key);
    } else if (key == "bank") c.bank_path = value.get<std::string>();
    else if (key == "mode") c.mode = parse_mode_from_name(value.get<std::string>());
    else if (key == "start_label") c.start_label = value.get<std::string>();
    else if (key == "ambiguous_tags") c.ambiguous_tags = string_set(value, key);
    else if (key == "lexicon") c.lexicon_path = value.get<std::string>();
    else if (key == "tagset_map") c.tagset_map_path = value.get<std::string>();
    else if (key == "lexicon_fold_case") c.lexicon_fold_case = value.get<bool>();
    else if (key == "gt_pure") c.gt.pure = value.get<bool>();
    else if (key == "gt_floor") c.gt.floor = integer_field<std::uint64_t>(value, key);
    else if (key == "seed_weight") {
      std::string s = value.get<std::string>();
      if (s == "one") c.seed_weight = SeedWeight::One;
      else if (s == "uniform") c.seed_weight = SeedWeight::UniformOverTags;
      else throw ConfigError("seed_weight must be 'one' or 'uniform'");
    } else if (key == "numeric") c.numeric = value.get<std::string>();
    else if (key == "selector") c.selector = value.get<std::string>();
    else if (key == "mc_samples") c.mc_samples = integer_field<std::uint64_t>(value, key);
    else if (key == "sample_scheme") {
      std::string s = value.get<std::string>();
      if (s == "inside") c.sample_scheme = SampleScheme::InsideWeighted;
      else if (s == "fragment") c.sample_scheme = SampleScheme::FragmentProportional;
      else throw ConfigError("sample_scheme must be 'inside' or 'fragment'");
    } else if (key == "enumeration_limit")
      c.enumeration_limit = integer_field<std::uint64_t>(value, key);
    else if (key == "n_train") c.n_train = integer_field<std::size_t>(value, key);
    else if (key == "n_test") c.n_test = integer_field<std::size_t>(value, key);
    else if (key == "n_splits") c.n_splits = integer_field<std::size_t>(value, key);
    else if (key == "seed") c.seed = integer_field<std::uint64_t>(value, key);
    else if (key == "exclude_width_one")
      c.brackets.exclude_width_one = value.get<bool>();
    else if (key == "include_full_span")
      c.brackets.include_full_span = value.get<bool>();
    else if (key == "output_dir") c.output_dir = value.get<std::string>();
    else if (key == "forest_dump") c.forest_dump_path = value.get<std::string>();
    else if (key == "manifest") c.manifest_path = value.get<std::string>();
    else throw ConfigError("unknown config field '" + key + "'");
  }
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str(), "'" + path + "'");
}

std::string config_to_json(const RunConfig& c) {
  json j;
  j["corpus"] = c.corpus_path;
  j["train_corpus"] = c.train_path;
  j["test_corpus"] = c.test_path;
  j["ignore_labels"] = c.ignore_labels;
  j["input_form"] = c.input_form;
  if (c.max_depth)
    j["max_depth"] = *c.max_depth;
  else
    j["max_depth"] = "unbounded";
  j["bank"] = c.bank_path;
  j["mode"] = parse_mode_name(c.mode);
  j["start_label"] = c.start_label;
  j["ambiguous_tags"] = c.ambiguous_tags;
  j["lexicon"] = c.lexicon_path;
  j["tagset_map"] = c.tagset_map_path;
  j["lexicon_fold_case"] = c.lexicon_fold_case;
  j["gt_pure"] = c.gt.pure;
  j["gt_floor"] = c.gt.floor;
  j["seed_weight"] = c.seed_weight == SeedWeight::One ? "one" : "uniform";
  j["numeric"] = c.numeric;
  j["selector"] = c.selector;
  j["mc_samples"] = c.mc_samples;
  j["sample_scheme"] =
      c.sample_scheme == SampleScheme::InsideWeighted ? "inside" : "fragment";
  j["enumeration_limit"] = c.enumeration_limit;
  j["n_train"] = c.n_train;
  j["n_test"] = c.n_test;
  j["n_splits"] = c.n_splits;
  if (c.seed) j["seed"] = *c.seed;
  j["exclude_width_one"] = c.brackets.exclude_width_one;
  j["include_full_span"] = c.brackets.include_full_span;
  j["output_dir"] = c.output_dir;
  j["forest_dump"] = c.forest_dump_path;
  j["manifest"] = c.manifest_path;
  return j.dump(2) + "\n";
}

void apply_override(RunConfig& config, const std::string& key, const std::string& value) {
  json j;
  // Route through the JSON reader so flags and file fields share one parser.
  if (key == "ignore_labels" || key == "ambiguous_tags") {
    j[key] = split_commas(value);
  } else if (key == "max_depth" && value != "unbounded") {
    j[key] = std::stoi(value);
  } else if (key == "lexicon_fold_case" || key == "gt_pure" || key == "exclude_width_one" ||
             key == "include_full_span") {
    if (value != "true" && value != "false")
      throw ConfigError("config field '" + key + "' expects true or false");
    j[key] = value == "true";
  } else if (key == "gt_floor" || key == "mc_samples" || key == "enumeration_limit" ||
             key == "n_train" || key == "n_test" || key == "n_splits" || key == "seed") {
    try {
      j[key] = std::stoull(value);
    } catch (const std::exception&) {
      throw ConfigError("config field '" + key + "' expects an integer, got '" + value + "'");
    }
  } else {
    j[key] = value;
  }
  RunConfig parsed = config_from_json_text(j.dump(), "override");
  // Copy just the touched field by re-reading the single-key object.
  const std::string& k = key;
  if (k == "corpus") config.corpus_path = parsed.corpus_path;
  else if (k == "train_corpus") config.train_path = parsed.train_path;
  else if (k == "test_corpus") config.test_path = parsed.test_path;
  else if (k == "ignore_labels") config.ignore_labels = parsed.ignore_labels;
  else if (k == "input_form") config.input_form = parsed.input_form;
  else if (k == "max_depth") config.max_depth = parsed.max_depth;
  else if (k == "bank") config.bank_path = parsed.bank_path;
  else if (k == "mode") config.mode = parsed.mode;
  else if (k == "start_label") config.start_label = parsed.start_label;
  else if (k == "ambiguous_tags") config.ambiguous_tags = parsed.ambiguous_tags;
  else if (k == "lexicon") config.lexicon_path = parsed.lexicon_path;
  else if (k == "tagset_map") config.tagset_map_path = parsed.tagset_map_path;
  else if (k == "lexicon_fold_case") config.lexicon_fold_case = parsed.lexicon_fold_case;
  else if (k == "gt_pure") config.gt.pure = parsed.gt.pure;
  else if (k == "gt_floor") config.gt.floor = parsed.gt.floor;
  else if (k == "seed_weight") config.seed_weight = parsed.seed_weight;
  else if (k == "numeric") config.numeric = parsed.numeric;
  else if (k == "selector") config.selector = parsed.selector;
  else if (k == "mc_samples") config.mc_samples = parsed.mc_samples;
  else if (k == "sample_scheme") config.sample_scheme = parsed.sample_scheme;
  else if (k == "enumeration_limit") config.enumeration_limit = parsed.enumeration_limit;
  else if (k == "n_train") config.n_train = parsed.n_train;
  else if (k == "n_test") config.n_test = parsed.n_test;
  else if (k == "n_splits") config.n_splits = parsed.n_splits;
  else if (k == "seed") config.seed = parsed.seed;
  else if (k == "exclude_width_one") config.brackets.exclude_width_one = parsed.brackets.exclude_width_one;
  else if (k == "include_full_span") config.brackets.include_full_span = parsed.brackets.include_full_span;
  else if (k == "output_dir") config.output_dir = parsed.output_dir;
  else if (k == "forest_dump") config.forest_dump_path = parsed.forest_dump_path;
  else if (k == "manifest") config.manifest_path = parsed.manifest_path;
  else throw ConfigError("unknown config field '" + key + "'");
}

void validate_config(const RunConfig& config, bool wants_splits, bool wants_sampling) {
  if (config.input_form != "words" && config.input_form != "pos")
    throw ConfigError("input_form must be 'words' or 'pos'");
  if (config.numeric != "rational" && config.numeric != "double")
    throw ConfigError("numeric must be 'rational' or 'double'");
  select_method_from_name(config.selector);  // throws on bad name
  if (config.mode == ParseMode::Dop4 && config.lexicon_path.empty())
    throw ConfigError("mode dop4 requires a lexicon");
  if (config.max_depth && *config.max_depth < 1)
    throw ConfigError("max_depth must be >= 1 or \"unbounded\"");
  if (wants_splits) {
    bool explicit_split = !config.train_path.empty() || !config.test_path.empty();
    if (explicit_split) {
      if (config.train_path.empty() || config.test_path.empty())
        throw ConfigError("explicit splits need both train_corpus and test_corpus");
      if (config.n_splits > 1)
        throw ConfigError("explicit train/test files allow only one split");
    } else {
      if (config.corpus_path.empty()) throw ConfigError("no corpus configured");
      if (config.n_train == 0 || config.n_test == 0)
        throw ConfigError("random splits need n_train and n_test");
      if (config.n_splits == 0) throw ConfigError("n_splits must be >= 1");
      if (!config.seed) throw ConfigError("random splits need a seed");
    }
  }
  bool uses_mc = select_method_from_name(config.selector) == SelectMethod::MonteCarlo;
  if (wants_sampling && uses_mc) {
    if (config.mc_samples == 0) throw ConfigError("mc_samples must be >= 1");
    if (!config.seed) throw ConfigError("Monte Carlo selection needs a seed");
  }
}

}  // namespace dop
