#pragma once

#include "dop/derivation.hpp"
#include "dop/error.hpp"
#include "dop/model.hpp"
#include "dop/numeric.hpp"
#include "dop/parser.hpp"
#include "dop/rng.hpp"
#include "dop/tree.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dop {

enum class SelectMethod : std::uint8_t { Exact, ViterbiDerivation, MonteCarlo };
std::string select_method_name(SelectMethod method);
SelectMethod select_method_from_name(const std::string& name);

struct ParseResult {
  Tree tree;
  double score = 0.0;  // conditional probability (MC: modal frequency / n)
  SelectMethod method = SelectMethod::ViterbiDerivation;
  std::uint64_t samples_used = 0;  // MC only
  double standard_error = 0.0;     // MC only
};

// Choice of proposal when sampling derivations. Inside-weighted is exact
// (each derivation drawn with probability mass(d)/mass(root));
// fragment-proportional ignores child masses and is kept for fidelity
// experiments with the historical method.
enum class SampleScheme : std::uint8_t { InsideWeighted, FragmentProportional };

// Substitution probability of every application, resolved against the model
// once per forest. Throws Error when the model cannot price an application.
std::vector<std::vector<Rational>> resolve_probabilities(const DerivationForest& forest,
                                                         const ScoreModel& model);

template <class Num>
std::vector<std::vector<Num>> resolve_scores(const DerivationForest& forest,
                                             const ScoreModel& model) {
  std::vector<std::vector<Rational>> exact = resolve_probabilities(forest, model);
  std::vector<std::vector<Num>> out(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) {
    out[i].reserve(exact[i].size());
    for (const Rational& q : exact[i]) out[i].push_back(num_cast<Num>(q));
  }
  return out;
}

template <class Num>
Num derivation_probability(const Derivation& d, const ScoreModel& model) {
  if (d.empty()) throw std::invalid_argument("empty derivation");
  Num p = num_one<Num>();
  for (const DerivationStep& step : d) {
    auto q = model.lookup(step.fragment.label, fragment_key(step.fragment, false),
                          step.seeded_tag_count);
    if (!q)
      throw Error("fragment '" + fragment_key(step.fragment) +
                  "' has no probability under this model");
    p = p * num_cast<Num>(*q);
  }
  return p;
}

// mass(node) = sum over applications of P(fragment) * prod mass(children);
// the root's mass is the summed probability of every derivation in the forest.
template <class Num>
std::vector<Num> inside_mass(const DerivationForest& forest,
                             const std::vector<std::vector<Num>>& scores) {
  std::vector<Num> mass(forest.nodes.size(), num_zero<Num>());
  for (std::uint32_t id : forest.topo) {
    Num total = num_zero<Num>();
    const ForestNode& node = forest.nodes[id];
    for (std::size_t a = 0; a < node.apps.size(); ++a) {
      Num w = scores[id][a];
      for (std::uint32_t c : node.apps[a].children) w = w * mass[c];
      total = total + w;
    }
    mass[id] = total;
  }
  return mass;
}

template <class Num>
Num root_mass(const DerivationForest& forest, const std::vector<std::vector<Num>>& scores) {
  if (forest.empty()) return num_zero<Num>();
  return inside_mass(forest, scores)[*forest.root];
}

namespace detail {

void append_derivation(const DerivationForest& forest,
                       const std::vector<std::size_t>& choice, std::uint32_t id,
                       Derivation& out);

}  // namespace detail

// Max-product dynamic program. Ties keep the canonical-order first candidate:
// nodes are numbered by (begin, end, label) and applications sorted within
// each node, so "first strictly greater wins" realizes that order.
template <class Num>
std::pair<Derivation, Num> most_probable_derivation(
    const DerivationForest& forest, const std::vector<std::vector<Num>>& scores) {
  if (forest.empty()) throw std::invalid_argument("empty forest");
  std::vector<Num> best(forest.nodes.size(), num_zero<Num>());
  std::vector<std::size_t> choice(forest.nodes.size(), 0);
  for (std::uint32_t id : forest.topo) {
    const ForestNode& node = forest.nodes[id];
    bool any = false;
    for (std::size_t a = 0; a < node.apps.size(); ++a) {
      Num w = scores[id][a];
      for (std::uint32_t c : node.apps[a].children) w = w * best[c];
      if (!any || best[id] < w) {
        best[id] = w;
        choice[id] = a;
        any = true;
      }
    }
  }
  Derivation d;
  detail::append_derivation(forest, choice, *forest.root, d);
  return {std::move(d), best[*forest.root]};
}

// Top-down sampling; with InsideWeighted each application is chosen with
// probability P(fragment) * prod mass(children) / mass(node).
template <class Num>
Derivation sample_derivation(const DerivationForest& forest,
                             const std::vector<std::vector<Num>>& scores,
                             const std::vector<Num>& mass, Rng& rng,
                             SampleScheme scheme = SampleScheme::InsideWeighted) {
  if (forest.empty()) throw std::invalid_argument("empty forest");
  if (mass.size() != forest.nodes.size())
    throw std::invalid_argument("inside-mass table does not match forest");
  if (!(num_zero<Num>() < mass[*forest.root])) throw Error("zero root mass");

  Derivation out;
  std::vector<std::uint32_t> agenda{*forest.root};
  // Explicit stack in preorder: expand a node, push its children reversed.
  while (!agenda.empty()) {
    std::uint32_t id = agenda.back();
    agenda.pop_back();
    const ForestNode& node = forest.nodes[id];
    // Weights of this node's applications under the chosen scheme.
    std::vector<double> w(node.apps.size(), 0.0);
    double total = 0.0;
    for (std::size_t a = 0; a < node.apps.size(); ++a) {
      Num v = scores[id][a];
      if (scheme == SampleScheme::InsideWeighted)
        for (std::uint32_t c : node.apps[a].children) v = v * mass[c];
      w[a] = to_double(v);
      total += w[a];
    }
    if (total <= 0.0) throw Error("node with zero mass reached while sampling");
    double u = rng.uniform() * total;
    std::size_t pick = 0;
    bool found = false;
    double acc = 0.0;
    for (std::size_t a = 0; a < w.size(); ++a) {
      if (w[a] <= 0.0) continue;
      acc += w[a];
      pick = a;
      if (u < acc) {
        found = true;
        break;
      }
    }
    if (!found) {
      // Rounding slack: fall back to the last application with positive weight.
    }
    const Application& app = node.apps[pick];
    out.push_back(DerivationStep{app.fragment, app.seeded_tag_count});
    for (std::size_t c = app.children.size(); c > 0; --c)
      agenda.push_back(app.children[c - 1]);
  }
  return out;
}

template <class Num>
ParseResult most_probable_parse_mc(const DerivationForest& forest,
                                   const std::vector<std::vector<Num>>& scores,
                                   std::uint64_t n_samples, Rng& rng,
                                   SampleScheme scheme = SampleScheme::InsideWeighted) {
  if (forest.empty()) throw std::invalid_argument("empty forest");
  if (n_samples == 0) throw std::invalid_argument("need at least one sample");
  std::vector<Num> mass = inside_mass(forest, scores);
  if (!(num_zero<Num>() < mass[*forest.root])) throw Error("zero root mass");

  struct Tally {
    std::uint64_t count = 0;
    Tree tree;
  };
  std::map<std::string, Tally> tallies;  // keyed by serialization
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    Derivation d = sample_derivation(forest, scores, mass, rng, scheme);
    Tree t = compose_derivation(d);
    Tally& tally = tallies[serialize(t)];
    if (tally.count == 0) tally.tree = std::move(t);
    ++tally.count;
  }
  // Modal tree; ties go to the smaller serialization (map order).
  const Tally* best = nullptr;
  for (const auto& [key, tally] : tallies)
    if (!best || tally.count > best->count) best = &tally;

  ParseResult r;
  r.tree = best->tree;
  r.method = SelectMethod::MonteCarlo;
  r.samples_used = n_samples;
  double p = static_cast<double>(best->count) / static_cast<double>(n_samples);
  r.score = p;
  r.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
  return r;
}

// Enumerates, groups by composed tree, and returns the argmax by summed
// probability; score is conditional on the forest (sums to 1 across parses).
template <class Num>
ParseResult most_probable_parse_exact(const DerivationForest& forest,
                                      const ScoreModel& model,
                                      std::uint64_t enumeration_limit = 10000) {
  if (forest.empty()) throw std::invalid_argument("empty forest");
  std::vector<Derivation> all = enumerate_derivations(forest, enumeration_limit);
  struct Group {
    Tree tree;
    Num prob = num_zero<Num>();
  };
  std::vector<Group> groups;
  std::map<std::string, std::size_t> by_key;
  Num total = num_zero<Num>();
  for (const Derivation& d : all) {
    Tree t = compose_derivation(d);
    Num p = derivation_probability<Num>(d, model);
    total = total + p;
    std::string key = serialize(t);
    auto [it, fresh] = by_key.emplace(std::move(key), groups.size());
    if (fresh) groups.push_back(Group{std::move(t), num_zero<Num>()});
    groups[it->second].prob = groups[it->second].prob + p;
  }
  // First strictly-greater wins: groups are in enumeration (canonical) order.
  std::size_t best = 0;
  for (std::size_t g = 1; g < groups.size(); ++g)
    if (groups[best].prob < groups[g].prob) best = g;

  ParseResult r;
  r.tree = groups[best].tree;
  r.method = SelectMethod::Exact;
  if (num_zero<Num>() < total) r.score = to_double(groups[best].prob / total);
  return r;
}

// Probability that the forest derives exactly this tree: a dynamic program
// over (forest node, tree node) pairs, laying each application's fragment
// over the tree and requiring slot spans to line up.
template <class Num>
Num parse_probability(const Tree& tree, const DerivationForest& forest,
                      const std::vector<std::vector<Num>>& scores) {
  if (forest.empty()) return num_zero<Num>();
  if (tree_yield(tree) != forest.sentence)
    throw std::invalid_argument("tree yield does not match the forest's sentence");

  struct Span {
    std::uint32_t begin, end;
  };
  std::map<const Tree*, Span> spans;
  std::uint32_t cursor = 0;
  auto annotate = [&](auto&& self, const Tree& t) -> void {
    std::uint32_t begin = cursor;
    if (t.leaf()) {
      ++cursor;
    } else {
      for (const Tree& c : t.children) self(self, c);
    }
    spans.emplace(&t, Span{begin, cursor});
  };
  annotate(annotate, tree);

  // Overlay one fragment on the tree at t; collects the subtree bound to each
  // open slot, in frontier order. Fails when structure or labels disagree.
  auto overlay = [&](auto&& self, const FragNode& n, const Tree& t,
                     std::vector<const Tree*>& bound) -> bool {
    switch (n.form) {
      case FragForm::Open:
        if (t.label != n.label || t.leaf()) return false;
        bound.push_back(&t);
        return true;
      case FragForm::Terminal:
        return t.leaf() && t.kind == SymbolKind::Terminal && t.label == n.label;
      case FragForm::TagLeaf:
        return t.leaf() && t.kind != SymbolKind::Terminal && t.label == n.label;
      case FragForm::Internal: {
        if (t.label != n.label || t.children.size() != n.children.size()) return false;
        for (std::size_t i = 0; i < n.children.size(); ++i)
          if (!self(self, n.children[i], t.children[i], bound)) return false;
        return true;
      }
      case FragForm::Hole:
        return false;  // templates never reach the matcher
    }
    return false;
  };

  std::map<std::pair<std::uint32_t, const Tree*>, Num> memo;
  auto rec = [&](auto&& self, std::uint32_t id, const Tree& t) -> Num {
    auto key = std::make_pair(id, &t);
    auto hit = memo.find(key);
    if (hit != memo.end()) return hit->second;
    Num sum = num_zero<Num>();
    const ForestNode& node = forest.nodes[id];
    for (std::size_t a = 0; a < node.apps.size(); ++a) {
      std::vector<const Tree*> bound;
      if (!overlay(overlay, node.apps[a].fragment, t, bound)) continue;
      if (bound.size() != node.apps[a].children.size()) continue;
      Num w = scores[id][a];
      bool ok = true;
      for (std::size_t k = 0; k < bound.size(); ++k) {
        std::uint32_t child = node.apps[a].children[k];
        const ForestNode& cn = forest.nodes[child];
        Span s = spans.at(bound[k]);
        if (cn.begin != s.begin || cn.end != s.end || cn.label != bound[k]->label) {
          ok = false;
          break;
        }
        w = w * self(self, child, *bound[k]);
      }
      if (ok) sum = sum + w;
    }
    memo.emplace(key, sum);
    return sum;
  };

  const ForestNode& root = forest.nodes[*forest.root];
  if (root.label != tree.label) return num_zero<Num>();
  return rec(rec, *forest.root, tree);
}

// Model-level conveniences mirroring the primary signatures.
template <class Num>
std::vector<Num> inside_mass(const DerivationForest& forest, const ScoreModel& model) {
  return inside_mass(forest, resolve_scores<Num>(forest, model));
}
template <class Num>
std::pair<Derivation, Num> most_probable_derivation(const DerivationForest& forest,
                                                    const ScoreModel& model) {
  return most_probable_derivation(forest, resolve_scores<Num>(forest, model));
}
template <class Num>
Num parse_probability(const Tree& tree, const DerivationForest& forest,
                      const ScoreModel& model) {
  return parse_probability(tree, forest, resolve_scores<Num>(forest, model));
}

}  // namespace dop
