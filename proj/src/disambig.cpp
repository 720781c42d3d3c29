#include "dop/disambig.hpp"

namespace dop {

std::string select_method_name(SelectMethod method) {
  switch (method) {
    case SelectMethod::Exact: return "exact";
    case SelectMethod::ViterbiDerivation: return "viterbi-derivation";
    case SelectMethod::MonteCarlo: return "monte-carlo";
  }
  throw std::invalid_argument("bad method");
}

SelectMethod select_method_from_name(const std::string& name) {
  if (name == "exact") return SelectMethod::Exact;
  if (name == "viterbi-derivation" || name == "viterbi") return SelectMethod::ViterbiDerivation;
  if (name == "monte-carlo" || name == "mc") return SelectMethod::MonteCarlo;
  throw ConfigError("unknown selector '" + name +
                    "' (expected exact, viterbi-derivation or monte-carlo)");
}

std::vector<std::vector<Rational>> resolve_probabilities(const DerivationForest& forest,
                                                         const ScoreModel& model) {
  std::vector<std::vector<Rational>> out(forest.nodes.size());
  for (std::size_t id = 0; id < forest.nodes.size(); ++id) {
    const ForestNode& node = forest.nodes[id];
    out[id].reserve(node.apps.size());
    for (const Application& app : node.apps) {
      auto p = model.lookup(node.label, app.erased_key, app.seeded_tag_count);
      if (!p)
        throw Error("fragment '" + app.erased_key +
                    "' has no probability under this model");
      out[id].push_back(*p);
    }
  }
  return out;
}

namespace detail {

void append_derivation(const DerivationForest& forest,
                       const std::vector<std::size_t>& choice, std::uint32_t id,
                       Derivation& out) {
  const Application& app = forest.nodes[id].apps[choice[id]];
  out.push_back(DerivationStep{app.fragment, app.seeded_tag_count});
  for (std::uint32_t c : app.children) append_derivation(forest, choice, c, out);
}

}  // namespace detail

}  // namespace dop
