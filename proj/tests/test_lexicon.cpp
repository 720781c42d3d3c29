#include "dop/error.hpp"
#include "dop/lexicon.hpp"

#include <doctest.h>

#include "oracles.hpp"

#include <set>
#include <sstream>
#include <string>

using namespace dop;

namespace {

const std::set<std::string> kTagset{"NN", "NNS", "VB", "VBP", "DT"};

Lexicon from_text(const std::string& text, const TagsetMap& map,
                  const LexiconOptions& options = {}) {
  std::istringstream in(text);
  return load_lexicon(in, map, kTagset, options);
}

TagsetMap map_from_text(const std::string& text) {
  std::istringstream in(text);
  return load_tagset_map(in);
}

}  // namespace

TEST_CASE("identity mapping keeps corpus tags as they are") {
  Lexicon lex = from_text("flight\tNN\n", TagsetMap::identity_map());
  CHECK(lex.entries.at("flight") == std::set<std::string>{"NN"});
  CHECK(lex.dropped_tags == 0);
}

TEST_CASE("external tags fan out through the map and union per word") {
  TagsetMap map = map_from_text("N\tNN\nV\tVB,VBP\n");
  Lexicon lex = from_text("book\tN,V\n", map);
  CHECK(lex.entries.at("book") == std::set<std::string>{"NN", "VB", "VBP"});
  CHECK(lex.dropped_tags == 0);
}

TEST_CASE("tags outside the corpus tagset are filtered and counted") {
  TagsetMap map = map_from_text("N\tNN\nADJ\tJJ\n");  // JJ never occurs in training
  Lexicon lex = from_text("big\tADJ\nname\tN,ADJ\n", map);
  CHECK(lex.entries.count("big") == 0);       // every tag fell outside
  CHECK(lex.entries.at("name") == std::set<std::string>{"NN"});
  // One JJ dropped per row, plus one for the now-empty word "big".
  CHECK(lex.dropped_tags == 3);
}

TEST_CASE("unmapped external tags vanish silently into the drop counter") {
  TagsetMap map = map_from_text("N\tNN\n");
  Lexicon lex = from_text("word\tZZZ\n", map);
  CHECK(lex.entries.empty());
  CHECK(lex.dropped_tags == 1);  // the emptied row
}

TEST_CASE("comments and blank lines are skipped") {
  Lexicon lex = from_text("# header\n\nflight\tNN # trailing note\n\n",
                          TagsetMap::identity_map());
  CHECK(lex.entries.size() == 1);
  CHECK(lex.entries.at("flight") == std::set<std::string>{"NN"});
}

TEST_CASE("case folding applies to storage and lookup") {
  Lexicon lex = from_text("Book\tVB\n", TagsetMap::identity_map());
  CHECK(lex.entries.count("book") == 1);
  CHECK(lex.entries.count("Book") == 0);
  CHECK(lex.lookup("BOOK").has_value());
  CHECK(*lex.lookup("bOOk") == std::set<std::string>{"VB"});
  CHECK(lex.contains("book"));
  CHECK(!lex.contains("flight"));
}

TEST_CASE("folding can be turned off") {
  LexiconOptions opt;
  opt.fold_case = false;
  Lexicon lex = from_text("Book\tVB\n", TagsetMap::identity_map(), opt);
  CHECK(lex.entries.count("Book") == 1);
  CHECK(!lex.lookup("book").has_value());
  CHECK(lex.lookup("Book").has_value());
}

TEST_CASE("fold_word_case lowers ascii bytes") {
  CHECK(fold_word_case("AbC-9") == "abc-9");
  CHECK(fold_word_case("") == "");
}

TEST_CASE("absent words are absent, not empty") {
  Lexicon lex = from_text("flight\tNN\n", TagsetMap::identity_map());
  CHECK(!lex.lookup("diaheliotropism").has_value());
}

TEST_CASE("serialization is canonical and stable") {
  TagsetMap map = map_from_text("N\tNN\nV\tVB,VBP\n");
  Lexicon lex = from_text("zebra\tN\nbook\tV,N\n", map);
  std::ostringstream a, b;
  write_lexicon(lex, a);
  write_lexicon(lex, b);
  CHECK(a.str() == b.str());
  CHECK(a.str() == "book\tNN,VB,VBP\nzebra\tNN\n");
}

TEST_CASE("malformed rows and missing files are reported") {
  CHECK_THROWS_AS(from_text("no-tab-here\n", TagsetMap::identity_map()), FormatError);
  CHECK_THROWS_AS(from_text("word\t\n", TagsetMap::identity_map()), FormatError);
  CHECK_THROWS_AS(from_text("\tNN\n", TagsetMap::identity_map()), FormatError);
  CHECK_THROWS_AS(map_from_text("N NN\n"), FormatError);
  CHECK_THROWS_AS(map_from_text("\tNN\n"), FormatError);
  CHECK_THROWS_AS(load_lexicon_file("/nonexistent/lex", TagsetMap::identity_map(), kTagset),
                  IoError);
  CHECK_THROWS_AS(load_tagset_map_file("/nonexistent/map"), IoError);
}

TEST_CASE("mapping closure: every stored tag is a corpus tag") {
  TagsetMap map = map_from_text("N\tNN,NNS\nV\tVB,VBZ\nADJ\tJJ\n");
  Lexicon lex = from_text("a\tN,V,ADJ\nb\tV\nc\tADJ,N\n", map);
  for (const auto& [word, tags] : lex.entries)
    for (const std::string& t : tags) {
      CAPTURE(word);
      CHECK(kTagset.count(t) == 1);
    }
}
