#include "dop/error.hpp"
#include "dop/tree.hpp"

#include <doctest.h>

#include "oracles.hpp"

#include <string>
#include <vector>

using namespace dop;

TEST_CASE("two-constituent sentence parses into the expected shape") {
  Tree t = parse_tree("(S (NP (PRP She)) (VP (VBD saw)))");
  CHECK(t.label == "S");
  CHECK(t.kind == SymbolKind::Nonterminal);
  REQUIRE(t.children.size() == 2);
  CHECK(t.children[0].label == "NP");
  CHECK(t.children[1].label == "VP");
  const Tree& prp = t.children[0].children.at(0);
  CHECK(prp.label == "PRP");
  CHECK(prp.kind == SymbolKind::Preterminal);
  REQUIRE(prp.children.size() == 1);
  CHECK(prp.children[0].label == "She");
  CHECK(prp.children[0].kind == SymbolKind::Terminal);
}

TEST_CASE("minimal tree is one preterminal over one terminal") {
  Tree t = parse_tree("(X a)");
  CHECK(t.label == "X");
  CHECK(t.kind == SymbolKind::Preterminal);
  REQUIRE(t.children.size() == 1);
  CHECK(t.children[0].label == "a");
  CHECK(t.children[0].kind == SymbolKind::Terminal);
}

TEST_CASE("unbalanced input reports the offset where the text ran out") {
  try {
    parse_tree("(S (NP");
    FAIL("expected a parse error");
  } catch (const TreeParseError& e) {
    CHECK(e.offset == 7);
    CHECK(std::string(e.what()).find("at offset 7") != std::string::npos);
  }
}

TEST_CASE("assorted malformed inputs throw with a positive offset") {
  const char* bad[] = {")", "(", "()", "(S ())", "x", "", "(S (NP x)) junk",
                       "((S (X a)) (T (Y b)))"};
  for (const char* text : bad) {
    std::string shown(text);
    CAPTURE(shown);
    CHECK_THROWS_AS(parse_tree(text), TreeParseError);
  }
  try {
    parse_tree(")");
    FAIL("expected a parse error");
  } catch (const TreeParseError& e) {
    CHECK(e.offset == 1);
  }
}

TEST_CASE("outer label-less parentheses are unwrapped") {
  Tree plain = parse_tree("(S (X a))");
  Tree wrapped = parse_tree("( (S (X a)) )");
  CHECK(plain == wrapped);
}

TEST_CASE("serialization round-trips structurally") {
  const char* samples[] = {
      "(S (NP (PRP She)) (VP (VBD saw)))",
      "(X a)",
      "(S (A a) (B b) (C c))",
      "(TOP (S (NP (NN flight)) (VP (VB book) (NP (DT the) (NN flight)))))",
  };
  for (const char* text : samples) {
    Tree t = parse_tree(text);
    CHECK(parse_tree(serialize(t)) == t);
    CHECK(serialize(t) == text);
  }
}

TEST_CASE("round-trip holds on generated trees") {
  Rng rng(2024);
  std::vector<std::string> labels{"S", "NP", "VP", "PP"};
  std::vector<std::string> tags{"NN", "VB", "DT"};
  std::vector<std::string> words{"dog", "saw", "the", "caf\xc3\xa9"};
  for (int i = 0; i < 50; ++i) {
    Tree t = dop::testing::random_tree(rng, labels, tags, words, 4, 3);
    CAPTURE(serialize(t));
    CHECK(parse_tree(serialize(t)) == t);
  }
}

TEST_CASE("unicode terminals survive parsing and printing") {
  Tree t = parse_tree("(X caf\xc3\xa9)");
  CHECK(t.children.at(0).label == "caf\xc3\xa9");
  CHECK(serialize(t) == "(X caf\xc3\xa9)");
}

TEST_CASE("yield walks leaves left to right") {
  Tree t = parse_tree("(S (NP (DT the) (NN dog)) (VP (VBD ran)))");
  CHECK(tree_yield(t) == std::vector<std::string>{"the", "dog", "ran"});
  CHECK(yield_size(t) == 3);
}

TEST_CASE("stripping deletes terminals and leaves preterminal leaves") {
  Tree t = parse_tree("(S (NP (PRP She)))");
  Tree s = strip_to_pos(t);
  CHECK(s.label == "S");
  const Tree& prp = s.children.at(0).children.at(0);
  CHECK(prp.label == "PRP");
  CHECK(prp.kind == SymbolKind::Preterminal);
  CHECK(prp.leaf());
  CHECK(serialize(s) == "(S (NP (PRP)))");
  CHECK(parse_tree(serialize(s)) == s);
}

TEST_CASE("stripping is idempotent and its yield is the tag sequence") {
  Rng rng(7);
  std::vector<std::string> labels{"S", "NP", "VP"};
  std::vector<std::string> tags{"NN", "VB", "DT", "IN"};
  std::vector<std::string> words{"a", "b", "c"};
  for (int i = 0; i < 50; ++i) {
    Tree t = dop::testing::random_tree(rng, labels, tags, words, 4, 3);
    Tree s = strip_to_pos(t);
    CHECK(strip_to_pos(s) == s);

    // Independent leaf walk: collect preterminal labels of the original.
    std::vector<std::string> tag_seq;
    auto walk = [&](auto&& self, const Tree& n) -> void {
      if (n.kind == SymbolKind::Preterminal) {
        tag_seq.push_back(n.label);
        return;
      }
      for (const Tree& c : n.children) self(self, c);
    };
    walk(walk, t);
    CHECK(tree_yield(s) == tag_seq);
  }
}

TEST_CASE("a stream holds zero or more trees") {
  CHECK(parse_tree_stream("").empty());
  CHECK(parse_tree_stream("  \n\t ").empty());
  auto trees = parse_tree_stream("(X a)\n(Y b) (Z c)");
  REQUIRE(trees.size() == 3);
  CHECK(trees[0].label == "X");
  CHECK(trees[2].label == "Z");
}

TEST_CASE("validation rejects malformed hand-built trees") {
  Tree empty_label;
  empty_label.kind = SymbolKind::Preterminal;
  Tree word;
  word.label = "w";
  word.kind = SymbolKind::Terminal;
  empty_label.children.push_back(word);
  CHECK_THROWS_AS(validate_tree(empty_label), Error);

  Tree terminal_with_child = parse_tree("(X a)");
  terminal_with_child.children[0].children.push_back(word);
  CHECK_THROWS_AS(validate_tree(terminal_with_child), Error);

  Tree two_words = parse_tree("(X a)");
  two_words.children.push_back(word);
  CHECK_THROWS_AS(validate_tree(two_words), Error);
}
