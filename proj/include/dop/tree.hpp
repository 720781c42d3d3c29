#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dop {

enum class SymbolKind : std::uint8_t { Nonterminal, Preterminal, Terminal };

// Ordered labeled tree. Terminals are bare tokens; a childless parenthesized
// node "(NN)" is a preterminal leaf, which is how corpora reduced to tag
// strings round-trip.
struct Tree {
  std::string label;
  SymbolKind kind = SymbolKind::Nonterminal;
  std::vector<Tree> children;

  bool leaf() const { return children.empty(); }
  bool operator==(const Tree&) const = default;
};

// Parses exactly one bracketed tree; throws TreeParseError with a 1-based
// offset on malformed input. A label-less outer pair around a single tree
// (the PTB export convention) is unwrapped.
Tree parse_tree(std::string_view text);

// Zero or more trees from one buffer; offsets in errors are into the buffer.
std::vector<Tree> parse_tree_stream(std::string_view text);

void serialize(const Tree& t, std::string& out);
std::string serialize(const Tree& t);

std::vector<std::string> tree_yield(const Tree& t);
std::size_t yield_size(const Tree& t);

// Deletes terminal leaves, turning each preterminal into a leaf; idempotent.
Tree strip_to_pos(const Tree& t);

// Structural sanity: nonempty clean labels, kinds consistent with shape.
void validate_tree(const Tree& t);

}  // namespace dop
