#include "dop/lexicon.hpp"

#include "dop/error.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace dop {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t at = s.find(sep, start);
    if (at == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, at - start));
    start = at + 1;
  }
}

}  // namespace

std::string fold_word_case(const std::string& word) {
  std::string out = word;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::set<std::string> TagsetMap::apply(const std::string& external_tag) const {
  if (identity) return {external_tag};
  auto it = mapping.find(external_tag);
  if (it == mapping.end()) return {};
  return it->second;
}

TagsetMap TagsetMap::identity_map() {
  TagsetMap m;
  m.identity = true;
  return m;
}

TagsetMap load_tagset_map(std::istream& in) {
  TagsetMap map;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string row = trim(line.substr(0, line.find('#')));
    if (row.empty()) continue;
    std::size_t tab = row.find('\t');
    if (tab == std::string::npos)
      throw FormatError("tagset map line " + std::to_string(lineno) +
                        ": expected 'external<TAB>tag[,tag...]'");
    std::string external = trim(row.substr(0, tab));
    if (external.empty())
      throw FormatError("tagset map line " + std::to_string(lineno) + ": empty external tag");
    for (const std::string& t : split(row.substr(tab + 1), ',')) {
      std::string tag = trim(t);
      if (tag.empty())
        throw FormatError("tagset map line " + std::to_string(lineno) + ": empty target tag");
      map.mapping[external].insert(tag);
    }
  }
  return map;
}

TagsetMap load_tagset_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open tagset map '" + path + "'");
  return load_tagset_map(in);
}

std::optional<std::set<std::string>> Lexicon::lookup(const std::string& word) const {
  auto it = entries.find(options.fold_case ? fold_word_case(word) : word);
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

Lexicon load_lexicon(std::istream& in, const TagsetMap& map,
                     const std::set<std::string>& corpus_tagset,
                     const LexiconOptions& options) {
  Lexicon lex;
  lex.options = options;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string row = trim(line.substr(0, line.find('#')));
    if (row.empty()) continue;
    std::size_t tab = row.find('\t');
    if (tab == std::string::npos)
      throw FormatError("lexicon line " + std::to_string(lineno) +
                        ": expected 'word<TAB>tag[,tag...]'");
    std::string word = trim(row.substr(0, tab));
    if (word.empty())
      throw FormatError("lexicon line " + std::to_string(lineno) + ": empty word");
    if (options.fold_case) word = fold_word_case(word);
    std::set<std::string> tags;
    for (const std::string& t : split(row.substr(tab + 1), ',')) {
      std::string external = trim(t);
      if (external.empty())
        throw FormatError("lexicon line " + std::to_string(lineno) + ": empty tag");
      for (const std::string& mapped : map.apply(external)) {
        if (corpus_tagset.count(mapped))
          tags.insert(mapped);
        else
          ++lex.dropped_tags;
      }
    }
    if (tags.empty()) {
      ++lex.dropped_tags;
      continue;
    }
    lex.entries[word].insert(tags.begin(), tags.end());
  }
  return lex;
}

Lexicon load_lexicon_file(const std::string& path, const TagsetMap& map,
                          const std::set<std::string>& corpus_tagset,
                          const LexiconOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open lexicon '" + path + "'");
  return load_lexicon(in, map, corpus_tagset, options);
}

void write_lexicon(const Lexicon& lexicon, std::ostream& out) {
  for (const auto& [word, tags] : lexicon.entries) {
    out << word << '\t';
    bool first = true;
    for (const std::string& t : tags) {
      if (!first) out << ',';
      out << t;
      first = false;
    }
    out << '\n';
  }
}

}  // namespace dop
