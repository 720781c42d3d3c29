#pragma once

#include "dop/tree.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dop {

// One node of an extracted fragment (elementary subtree).
//   Internal  — expanded node with children
//   Open      — substitution slot left where a subtree was cut off
//   Terminal  — lexical leaf (word); `wildcard` marks a mismatch instantiation
//   TagLeaf   — preterminal kept as a frontier tag (tag-string corpora)
//   Hole      — lexical position erased when forming a frontier template
enum class FragForm : std::uint8_t { Internal, Open, Terminal, TagLeaf, Hole };

struct FragNode {
  FragForm form = FragForm::Internal;
  bool wildcard = false;
  std::string label;  // symbol, or the word itself for Terminal
  std::vector<FragNode> children;

  bool operator==(const FragNode&) const = default;
};

// A fragment is a FragNode whose root is Internal (it always has at least one
// child level, so its depth is >= 1).
using Fragment = FragNode;

FragNode internal_node(std::string label, std::vector<FragNode> children);
FragNode open_slot(std::string label);
FragNode terminal_leaf(std::string word, bool wildcard = false);
FragNode tag_leaf(std::string label);

// Edges on the longest root-to-frontier path; a node plus its children is 1.
int fragment_depth(const Fragment& f);

int open_slot_count(const Fragment& f);

// Canonical one-line form; equal strings iff equal fragments. Reserved
// characters in payloads are backslash-escaped. `mark_wildcards` controls the
// trailing '~' on mismatch-instantiated terminals; the unmarked form is the
// identity used for counting and probability lookup.
std::string fragment_key(const Fragment& f, bool mark_wildcards = true);
Fragment parse_fragment(std::string_view text);

// Replaces the leftmost open slot of t with u; throws std::invalid_argument
// when t has no slot or the slot label differs from u's root.
Fragment substitute(const Fragment& t, const Fragment& u);

struct FrontierTemplate {
  Fragment skeleton;   // terminals replaced by Hole markers
  int lexical_slots = 0;  // number of erased terminals (k)
};
FrontierTemplate template_of(const Fragment& f);

// Fully expanded fragment covering the whole subtree; root must be internal.
Fragment fragment_from_tree(const Tree& t);

// Inverse for complete fragments (no Open, no Hole); kinds are re-derived.
Tree fragment_to_tree(const Fragment& f);

void validate_fragment(const Fragment& f);

}  // namespace dop
