#include "dop/tree.hpp"

#include "dop/error.hpp"

#include <cctype>

namespace dop {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_token_char(char c) {
  if (c == '(' || c == ')' || is_space(c)) return false;
  return static_cast<unsigned char>(c) >= 0x20;
}

struct Reader {
  std::string_view text;
  std::size_t pos = 0;

  std::size_t offset() const { return pos + 1; }  // 1-based for error reports

  void skip_space() {
    while (pos < text.size() && is_space(text[pos])) ++pos;
  }

  bool done() {
    skip_space();
    return pos >= text.size();
  }

  char peek() const { return text[pos]; }

  std::string token() {
    std::size_t start = pos;
    while (pos < text.size() && is_token_char(text[pos])) ++pos;
    if (pos == start) {
      if (pos < text.size() && !is_space(text[pos]) && text[pos] != '(' && text[pos] != ')')
        throw TreeParseError("illegal character in token", offset());
      throw TreeParseError("expected token", offset());
    }
    return std::string(text.substr(start, pos - start));
  }

  // One parenthesized node. Allows a label-less node only when allow_group is
  // set (top level); such a node must wrap exactly one tree.
  Tree node(bool allow_group) {
    skip_space();
    if (pos >= text.size() || text[pos] != '(')
      throw TreeParseError("expected '('", offset());
    std::size_t open = offset();
    ++pos;
    skip_space();
    if (pos >= text.size()) throw TreeParseError("unbalanced '('", offset());

    Tree t;
    if (text[pos] == '(') {
      if (!allow_group) throw TreeParseError("node without label", offset());
      Tree inner = node(false);
      skip_space();
      if (pos >= text.size() || text[pos] != ')')
        throw TreeParseError("label-less group must wrap a single tree", offset());
      ++pos;
      return inner;
    }
    if (text[pos] == ')') throw TreeParseError("empty node", offset());

    t.label = token();
    std::size_t n_terminals = 0;
    std::size_t n_subtrees = 0;
    for (;;) {
      skip_space();
      if (pos >= text.size()) throw TreeParseError("unbalanced '('", offset());
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == '(') {
        t.children.push_back(node(false));
        ++n_subtrees;
      } else {
        Tree leaf;
        leaf.label = token();
        leaf.kind = SymbolKind::Terminal;
        t.children.push_back(std::move(leaf));
        ++n_terminals;
      }
    }
    if (n_terminals > 0 && (n_subtrees > 0 || n_terminals > 1))
      throw TreeParseError("terminal must be the only child of its tag", open);
    if (t.children.empty())
      t.kind = SymbolKind::Preterminal;  // "(NN)" — stripped tag leaf
    else if (n_terminals == 1)
      t.kind = SymbolKind::Preterminal;
    else
      t.kind = SymbolKind::Nonterminal;
    return t;
  }
};

void yield_into(const Tree& t, std::vector<std::string>& out) {
  if (t.leaf()) {
    out.push_back(t.label);
    return;
  }
  for (const Tree& c : t.children) yield_into(c, out);
}

void check_label(const std::string& label) {
  if (label.empty()) throw Error("tree node with empty label");
  for (char c : label)
    if (!is_token_char(c)) throw Error("illegal character in label '" + label + "'");
}

}  // namespace

Tree parse_tree(std::string_view text) {
  Reader r{text};
  if (r.done()) throw TreeParseError("empty input", 1);
  Tree t = r.node(true);
  if (!r.done()) throw TreeParseError("trailing content after tree", r.offset());
  validate_tree(t);
  return t;
}

std::vector<Tree> parse_tree_stream(std::string_view text) {
  Reader r{text};
  std::vector<Tree> trees;
  while (!r.done()) {
    trees.push_back(r.node(true));
    validate_tree(trees.back());
  }
  return trees;
}

void serialize(const Tree& t, std::string& out) {
  if (t.kind == SymbolKind::Terminal && t.leaf()) {
    out += t.label;
    return;
  }
  out += '(';
  out += t.label;
  for (const Tree& c : t.children) {
    out += ' ';
    serialize(c, out);
  }
  out += ')';
}

std::string serialize(const Tree& t) {
  std::string out;
  serialize(t, out);
  return out;
}

std::vector<std::string> tree_yield(const Tree& t) {
  std::vector<std::string> out;
  yield_into(t, out);
  return out;
}

std::size_t yield_size(const Tree& t) {
  if (t.leaf()) return 1;
  std::size_t n = 0;
  for (const Tree& c : t.children) n += yield_size(c);
  return n;
}

Tree strip_to_pos(const Tree& t) {
  Tree out;
  out.label = t.label;
  out.kind = t.kind;
  for (const Tree& c : t.children) {
    if (c.kind == SymbolKind::Terminal && c.leaf()) continue;
    out.children.push_back(strip_to_pos(c));
  }
  return out;
}

void validate_tree(const Tree& t) {
  check_label(t.label);
  switch (t.kind) {
    case SymbolKind::Terminal:
      if (!t.leaf()) throw Error("terminal with children: '" + t.label + "'");
      break;
    case SymbolKind::Preterminal:
      if (t.children.size() > 1)
        throw Error("preterminal '" + t.label + "' with more than one child");
      if (!t.leaf() &&
          !(t.children[0].kind == SymbolKind::Terminal && t.children[0].leaf()))
        throw Error("preterminal '" + t.label + "' must dominate a terminal");
      break;
    case SymbolKind::Nonterminal:
      if (t.leaf()) throw Error("nonterminal leaf: '" + t.label + "'");
      for (const Tree& c : t.children)
        if (c.kind == SymbolKind::Terminal)
          throw Error("terminal directly under nonterminal '" + t.label + "'");
      break;
  }
  for (const Tree& c : t.children) validate_tree(c);
}

}  // namespace dop
