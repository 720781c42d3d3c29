#include "dop/fragment.hpp"

#include "dop/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace dop {

namespace {

constexpr std::string_view kReserved = "\\()?*~";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

void escape_into(const std::string& s, std::string& out) {
  for (char c : s) {
    if (kReserved.find(c) != std::string_view::npos || is_space(c)) out += '\\';
    out += c;
  }
}

void key_into(const FragNode& n, bool mark_wildcards, std::string& out) {
  switch (n.form) {
    case FragForm::Internal:
      out += '(';
      escape_into(n.label, out);
      for (const FragNode& c : n.children) {
        out += ' ';
        key_into(c, mark_wildcards, out);
      }
      out += ')';
      break;
    case FragForm::TagLeaf:
      out += '(';
      escape_into(n.label, out);
      out += ')';
      break;
    case FragForm::Open:
      escape_into(n.label, out);
      out += '?';
      break;
    case FragForm::Terminal:
      escape_into(n.label, out);
      if (mark_wildcards && n.wildcard) out += '~';
      break;
    case FragForm::Hole:
      out += '*';
      break;
  }
}

struct FragReader {
  std::string_view text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && is_space(text[pos])) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw FormatError("bad fragment: " + msg + " at offset " + std::to_string(pos + 1));
  }

  // A frontier token: payload plus an optional unescaped trailing sigil.
  FragNode leaf_token() {
    if (text[pos] == '*') {
      ++pos;
      FragNode n;
      n.form = FragForm::Hole;
      return n;
    }
    std::string payload;
    bool any = false;
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '\\') {
        if (pos + 1 >= text.size()) fail("dangling escape");
        payload += text[pos + 1];
        pos += 2;
        any = true;
        continue;
      }
      if (c == '(' || c == ')' || is_space(c) || c == '?' || c == '~' || c == '*') break;
      payload += c;
      ++pos;
      any = true;
    }
    if (!any) fail("expected token");
    FragNode n;
    n.label = std::move(payload);
    if (pos < text.size() && text[pos] == '?') {
      ++pos;
      n.form = FragForm::Open;
    } else if (pos < text.size() && text[pos] == '~') {
      ++pos;
      n.form = FragForm::Terminal;
      n.wildcard = true;
    } else {
      n.form = FragForm::Terminal;
    }
    return n;
  }

  FragNode node() {
    skip_space();
    if (pos >= text.size()) fail("unexpected end");
    if (text[pos] != '(') return leaf_token();
    ++pos;
    skip_space();
    if (pos >= text.size() || text[pos] == '(' || text[pos] == ')')
      fail("expected node label");
    FragNode label_tok = leaf_token();
    if (label_tok.form != FragForm::Terminal || label_tok.wildcard)
      fail("node label cannot carry a sigil");
    FragNode n;
    n.form = FragForm::TagLeaf;
    n.label = std::move(label_tok.label);
    for (;;) {
      skip_space();
      if (pos >= text.size()) fail("unbalanced '('");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      n.form = FragForm::Internal;
      n.children.push_back(node());
    }
    return n;
  }
};

int node_depth(const FragNode& n) {
  int best = 0;
  for (const FragNode& c : n.children) {
    int d = 1 + (c.form == FragForm::Internal ? node_depth(c) : 0);
    best = std::max(best, d);
  }
  return best;
}

void count_open(const FragNode& n, int& count) {
  if (n.form == FragForm::Open) {
    ++count;
    return;
  }
  for (const FragNode& c : n.children) count_open(c, count);
}

FragNode* find_leftmost_open(FragNode& n) {
  if (n.form == FragForm::Open) return &n;
  for (FragNode& c : n.children)
    if (FragNode* hit = find_leftmost_open(c)) return hit;
  return nullptr;
}

void erase_lexical(FragNode& n, int& holes) {
  if (n.form == FragForm::Terminal) {
    n.form = FragForm::Hole;
    n.label.clear();
    n.wildcard = false;
    ++holes;
    return;
  }
  for (FragNode& c : n.children) erase_lexical(c, holes);
}

void validate_node(const FragNode& n, bool is_root) {
  switch (n.form) {
    case FragForm::Internal:
      if (n.label.empty()) throw Error("fragment node with empty label");
      if (n.children.empty()) throw Error("internal fragment node without children");
      break;
    case FragForm::TagLeaf:
    case FragForm::Open:
      if (n.label.empty()) throw Error("fragment node with empty label");
      if (!n.children.empty()) throw Error("fragment frontier node with children");
      if (is_root) throw Error("fragment root must be an expanded node");
      break;
    case FragForm::Terminal:
      if (n.label.empty()) throw Error("fragment terminal with empty word");
      if (!n.children.empty()) throw Error("fragment terminal with children");
      if (is_root) throw Error("fragment root must be an expanded node");
      break;
    case FragForm::Hole:
      if (!n.label.empty() || !n.children.empty()) throw Error("malformed hole node");
      if (is_root) throw Error("fragment root must be an expanded node");
      break;
  }
  if (n.wildcard && n.form != FragForm::Terminal)
    throw Error("wildcard flag outside a terminal");
  for (const FragNode& c : n.children) validate_node(c, false);
}

}  // namespace

FragNode internal_node(std::string label, std::vector<FragNode> children) {
  FragNode n;
  n.form = FragForm::Internal;
  n.label = std::move(label);
  n.children = std::move(children);
  return n;
}

FragNode open_slot(std::string label) {
  FragNode n;
  n.form = FragForm::Open;
  n.label = std::move(label);
  return n;
}

FragNode terminal_leaf(std::string word, bool wildcard) {
  FragNode n;
  n.form = FragForm::Terminal;
  n.label = std::move(word);
  n.wildcard = wildcard;
  return n;
}

FragNode tag_leaf(std::string label) {
  FragNode n;
  n.form = FragForm::TagLeaf;
  n.label = std::move(label);
  return n;
}

int fragment_depth(const Fragment& f) {
  if (f.form != FragForm::Internal) throw std::invalid_argument("not a fragment root");
  return node_depth(f);
}

int open_slot_count(const Fragment& f) {
  int n = 0;
  count_open(f, n);
  return n;
}

std::string fragment_key(const Fragment& f, bool mark_wildcards) {
  std::string out;
  key_into(f, mark_wildcards, out);
  return out;
}

Fragment parse_fragment(std::string_view text) {
  FragReader r{text};
  FragNode n = r.node();
  r.skip_space();
  if (r.pos != text.size()) r.fail("trailing content");
  validate_fragment(n);
  return n;
}

Fragment substitute(const Fragment& t, const Fragment& u) {
  if (u.form != FragForm::Internal)
    throw std::invalid_argument("substituted fragment must have an expanded root");
  Fragment out = t;
  FragNode* slot = find_leftmost_open(out);
  if (!slot) throw std::invalid_argument("no open slot to substitute into");
  if (slot->label != u.label)
    throw std::invalid_argument("slot label '" + slot->label +
                                "' does not match root '" + u.label + "'");
  *slot = u;
  return out;
}

FrontierTemplate template_of(const Fragment& f) {
  FrontierTemplate t;
  t.skeleton = f;
  erase_lexical(t.skeleton, t.lexical_slots);
  return t;
}

Fragment fragment_from_tree(const Tree& t) {
  if (t.leaf() && t.kind != SymbolKind::Preterminal)
    throw std::invalid_argument("cannot form a fragment from a bare terminal");
  if (t.leaf()) return tag_leaf(t.label);  // stripped tag leaf
  FragNode n;
  n.form = FragForm::Internal;
  n.label = t.label;
  for (const Tree& c : t.children) {
    if (c.kind == SymbolKind::Terminal)
      n.children.push_back(terminal_leaf(c.label));
    else if (c.leaf())
      n.children.push_back(tag_leaf(c.label));
    else
      n.children.push_back(fragment_from_tree(c));
  }
  return n;
}

Tree fragment_to_tree(const Fragment& f) {
  Tree t;
  t.label = f.label;
  switch (f.form) {
    case FragForm::Terminal:
      t.kind = SymbolKind::Terminal;
      return t;
    case FragForm::TagLeaf:
      t.kind = SymbolKind::Preterminal;
      return t;
    case FragForm::Internal:
      break;
    default:
      throw std::invalid_argument("fragment is not complete (open slot or hole)");
  }
  bool has_terminal = false;
  for (const FragNode& c : f.children) {
    t.children.push_back(fragment_to_tree(c));
    has_terminal = has_terminal || c.form == FragForm::Terminal;
  }
  t.kind = has_terminal ? SymbolKind::Preterminal : SymbolKind::Nonterminal;
  return t;
}

void validate_fragment(const Fragment& f) { validate_node(f, true); }

}  // namespace dop
