#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace dop {

// Maps an external dictionary's tag names onto corpus tags (one external tag
// may fan out to several). Identity when empty-constructed via identity().
struct TagsetMap {
  std::map<std::string, std::set<std::string>> mapping;
  bool identity = false;

  std::set<std::string> apply(const std::string& external_tag) const;
  static TagsetMap identity_map();
};

TagsetMap load_tagset_map(std::istream& in);
TagsetMap load_tagset_map_file(const std::string& path);

struct LexiconOptions {
  bool fold_case = true;  // lookups and stored words lowercased
};

struct Lexicon {
  LexiconOptions options;
  std::map<std::string, std::set<std::string>> entries;  // word -> corpus tags
  std::uint64_t dropped_tags = 0;  // tags that mapped outside the corpus tagset

  std::optional<std::set<std::string>> lookup(const std::string& word) const;
  bool contains(const std::string& word) const { return lookup(word).has_value(); }
};

// Rows are "word<TAB>tag[,tag...]"; '#' starts a comment; blank lines skipped.
// Tags go through the map and are then filtered against the corpus tagset; a
// word whose tags all fall outside it is dropped (counted in dropped_tags).
Lexicon load_lexicon(std::istream& in, const TagsetMap& map,
                     const std::set<std::string>& corpus_tagset,
                     const LexiconOptions& options = {});
Lexicon load_lexicon_file(const std::string& path, const TagsetMap& map,
                          const std::set<std::string>& corpus_tagset,
                          const LexiconOptions& options = {});

// Canonical text form (sorted), for determinism checks and inspection.
void write_lexicon(const Lexicon& lexicon, std::ostream& out);

std::string fold_word_case(const std::string& word);

}  // namespace dop
