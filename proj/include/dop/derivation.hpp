#pragma once

#include "dop/numeric.hpp"
#include "dop/parser.hpp"
#include "dop/tree.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dop {

// A derivation is the left-to-right sequence of fragment applications; folding
// them with leftmost substitution rebuilds the parse tree.
struct DerivationStep {
  Fragment fragment;
  std::uint32_t seeded_tag_count = 0;

  bool operator==(const DerivationStep&) const = default;
};

using Derivation = std::vector<DerivationStep>;

BigInt count_derivations(const DerivationForest& forest);

// All derivations in the forest, each in leftmost (preorder) step order.
// Throws LimitError when the forest holds more than `limit` derivations.
std::vector<Derivation> enumerate_derivations(const DerivationForest& forest,
                                              std::uint64_t limit);

// Leftmost-substitution fold; the result must come out complete.
Tree compose_derivation(const Derivation& d);

// Stable identity: erased fragment keys joined with '|'.
std::string derivation_signature(const Derivation& d);

}  // namespace dop
