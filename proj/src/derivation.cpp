#include "dop/derivation.hpp"

#include "dop/error.hpp"

#include <stdexcept>

namespace dop {

BigInt count_derivations(const DerivationForest& forest) {
  if (forest.empty()) return BigInt(0);
  std::vector<BigInt> counts(forest.nodes.size());
  for (std::uint32_t id : forest.topo) {
    BigInt total(0);
    for (const Application& app : forest.nodes[id].apps) {
      BigInt ways(1);
      for (std::uint32_t c : app.children) ways *= counts[c];
      total += ways;
    }
    counts[id] = std::move(total);
  }
  return counts[*forest.root];
}

std::vector<Derivation> enumerate_derivations(const DerivationForest& forest,
                                              std::uint64_t limit) {
  if (forest.empty()) return {};
  BigInt total = count_derivations(forest);
  if (total > limit)
    throw LimitError("forest holds " + total.str() + " derivations, limit is " +
                     std::to_string(limit));

  // Bottom-up over the topological order; each node's derivations are already
  // flattened step sequences, children spliced in frontier order.
  std::vector<std::vector<Derivation>> per_node(forest.nodes.size());
  for (std::uint32_t id : forest.topo) {
    std::vector<Derivation>& mine = per_node[id];
    for (const Application& app : forest.nodes[id].apps) {
      std::vector<Derivation> partial{
          {DerivationStep{app.fragment, app.seeded_tag_count}}};
      for (std::uint32_t c : app.children) {
        std::vector<Derivation> grown;
        for (const Derivation& head : partial) {
          for (const Derivation& tail : per_node[c]) {
            Derivation d = head;
            d.insert(d.end(), tail.begin(), tail.end());
            grown.push_back(std::move(d));
          }
        }
        partial = std::move(grown);
      }
      for (Derivation& d : partial) mine.push_back(std::move(d));
    }
  }
  return per_node[*forest.root];
}

Tree compose_derivation(const Derivation& d) {
  if (d.empty()) throw std::invalid_argument("empty derivation");
  Fragment acc = d[0].fragment;
  for (std::size_t i = 1; i < d.size(); ++i) acc = substitute(acc, d[i].fragment);
  if (open_slot_count(acc) != 0)
    throw std::invalid_argument("derivation leaves open slots");
  return fragment_to_tree(acc);
}

std::string derivation_signature(const Derivation& d) {
  std::string out;
  for (const DerivationStep& s : d) {
    if (!out.empty()) out += '|';
    out += fragment_key(s.fragment, false);
  }
  return out;
}

}  // namespace dop
