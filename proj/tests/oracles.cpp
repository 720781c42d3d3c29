#include "oracles.hpp"

#include "dop/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string_view>
#include <tuple>

namespace dop::testing {
namespace {

constexpr std::string_view kReserved = "\\()?*~";

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (kReserved.find(c) != std::string_view::npos || c == ' ' || c == '\t' ||
        c == '\n' || c == '\r')
      out += '\\';
    out += c;
  }
  return out;
}

// ---- bitmask fragment enumeration ------------------------------------------

struct FlatNode {
  const Tree* tree;
  int parent;               // index into the flat list, -1 at the root
  std::vector<int> kids;    // indices of the children
};

void flatten(const Tree& t, int parent, std::vector<FlatNode>& out) {
  int id = static_cast<int>(out.size());
  out.push_back({&t, parent, {}});
  for (const Tree& c : t.children) {
    out[id].kids.push_back(static_cast<int>(out.size()));
    flatten(c, id, out);
  }
}

// Prints the fragment rooted at `v` whose expanded internal nodes are exactly
// `expanded`; returns its depth in edges.
int print_fragment(const std::vector<FlatNode>& flat, int v,
                   const std::set<int>& expanded, std::string& out) {
  const FlatNode& node = flat[v];
  out += '(';
  out += esc(node.tree->label);
  int height = 1;
  for (int c : node.kids) {
    out += ' ';
    const Tree& child = *flat[c].tree;
    if (!child.children.empty()) {
      if (expanded.count(c)) {
        height = std::max(height, 1 + print_fragment(flat, c, expanded, out));
      } else {
        out += esc(child.label);
        out += '?';
      }
    } else if (child.kind == SymbolKind::Terminal) {
      out += esc(child.label);
    } else {
      out += '(';
      out += esc(child.label);
      out += ')';
    }
  }
  out += ')';
  return height;
}

void collect_internal(const std::vector<FlatNode>& flat, int v, std::vector<int>& out) {
  for (int c : flat[v].kids) {
    if (!flat[c].tree->children.empty()) {
      out.push_back(c);
      collect_internal(flat, c, out);
    }
  }
}

// ---- blind leftmost derivation search ---------------------------------------

struct Partial {
  std::size_t end;
  std::string tree;   // serialized derived subtree
  std::string key;    // this frontier element's contribution to the erased key
  std::vector<OracleStep> steps;
};

struct Search {
  const FragmentBank& bank;
  const std::vector<std::string>& words;
  const MatchPolicy& policy;
  std::size_t step_limit;
  // derive() is a pure function of its arguments; caching it keeps the
  // left-recursive descent finite-cost without changing what it returns.
  mutable std::map<std::tuple<std::string, std::size_t, std::size_t>, std::vector<Partial>>
      memo;

  std::vector<Partial> derive(const std::string& label, std::size_t pos,
                              std::size_t budget) const;

  std::vector<Partial> walk(const FragNode& n, std::size_t pos, std::size_t budget) const {
    std::vector<Partial> out;
    switch (n.form) {
      case FragForm::Terminal: {
        if (pos >= words.size()) return out;
        const std::string& word = words[pos];
        if (n.label == word || policy.wildcard_positions.count(pos))
          out.push_back({pos + 1, word, esc(word), {}});
        return out;
      }
      case FragForm::TagLeaf: {
        if (pos < words.size() && words[pos] == n.label)
          out.push_back({pos + 1, "(" + n.label + ")", "(" + esc(n.label) + ")", {}});
        return out;
      }
      case FragForm::Open: {
        for (Partial& p : derive(n.label, pos, budget)) {
          p.key = esc(n.label) + "?";
          out.push_back(std::move(p));
        }
        return out;
      }
      case FragForm::Internal: {
        std::vector<Partial> acc = {
            {pos, "(" + n.label, "(" + esc(n.label), {}}};
        for (const FragNode& c : n.children) {
          std::vector<Partial> next;
          for (const Partial& a : acc) {
            for (const Partial& b : walk(c, a.end, budget)) {
              Partial merged = a;
              merged.end = b.end;
              merged.tree += " " + b.tree;
              merged.key += " " + b.key;
              merged.steps.insert(merged.steps.end(), b.steps.begin(), b.steps.end());
              next.push_back(std::move(merged));
            }
          }
          acc = std::move(next);
          if (acc.empty()) return acc;
        }
        for (Partial& p : acc) {
          p.tree += ")";
          p.key += ")";
          out.push_back(std::move(p));
        }
        return out;
      }
      case FragForm::Hole:
        return out;
    }
    return out;
  }
};

std::vector<Partial> Search::derive(const std::string& label, std::size_t pos,
                                    std::size_t budget) const {
  std::vector<Partial> results;
  if (budget == 0) return results;
  auto key = std::make_tuple(label, pos, budget);
  auto cached = memo.find(key);
  if (cached != memo.end()) return cached->second;

  auto cls = bank.classes.find(label);
  if (cls != bank.classes.end()) {
    for (const auto& [key, entry] : cls->second) {
      for (Partial& p : walk(entry.fragment, pos, budget - 1)) {
        OracleStep step{label, p.key, 0};
        p.key.clear();
        p.steps.insert(p.steps.begin(), std::move(step));
        results.push_back(std::move(p));
      }
    }
  }

  auto seeded = policy.open_tag_positions.find(pos);
  if (seeded != policy.open_tag_positions.end() && seeded->second.count(label) &&
      pos < words.size()) {
    const std::string& word = words[pos];
    Partial p;
    p.end = pos + 1;
    p.tree = "(" + label + " " + word + ")";
    p.steps = {{label, "(" + esc(label) + " " + esc(word) + ")",
                static_cast<std::uint32_t>(seeded->second.size())}};
    results.push_back(std::move(p));
  }

  // Deduplicate exactly as the packed forest does: two candidates are the same
  // application chain when their rewritten identities and sub-derivations
  // agree. The seeded flag is not part of the identity (a policy-seeded tag
  // that the bank also knows packs into the one existing application).
  std::set<std::string> seen;
  std::vector<Partial> unique;
  for (Partial& p : results) {
    std::string id = p.tree + "\x01" + std::to_string(p.end);
    for (const OracleStep& step : p.steps)
      id += "\x01" + step.root + "\x02" + step.erased_key;
    if (seen.insert(std::move(id)).second) unique.push_back(std::move(p));
  }
  return memo.emplace(std::move(key), std::move(unique)).first->second;
}

}  // namespace

std::map<std::string, std::uint64_t> oracle_fragment_counts(
    const std::vector<Tree>& corpus, std::optional<int> max_depth) {
  std::map<std::string, std::uint64_t> counts;
  for (const Tree& tree : corpus) {
    std::vector<FlatNode> flat;
    flatten(tree, -1, flat);
    for (int v = 0; v < static_cast<int>(flat.size()); ++v) {
      if (flat[v].tree->children.empty()) continue;
      std::vector<int> internal;
      collect_internal(flat, v, internal);
      if (internal.size() > 20)
        throw std::invalid_argument("oracle_fragment_counts: tree too large");
      for (std::uint64_t mask = 0; mask < (1ull << internal.size()); ++mask) {
        std::set<int> expanded;
        for (std::size_t i = 0; i < internal.size(); ++i)
          if (mask & (1ull << i)) expanded.insert(internal[i]);
        bool closed = true;
        for (int u : expanded)
          if (flat[u].parent != v && !expanded.count(flat[u].parent)) {
            closed = false;
            break;
          }
        if (!closed) continue;
        std::string key;
        int depth = print_fragment(flat, v, expanded, key);
        if (max_depth && depth > *max_depth) continue;
        ++counts[key];
      }
    }
  }
  return counts;
}

BigInt oracle_fragment_total(const Tree& tree) {
  std::vector<FlatNode> flat;
  flatten(tree, -1, flat);
  std::vector<BigInt> rooted(flat.size(), BigInt(0));
  BigInt total = 0;
  // Children precede parents nowhere in preorder, so walk backwards.
  for (int v = static_cast<int>(flat.size()) - 1; v >= 0; --v) {
    if (flat[v].tree->children.empty()) continue;
    BigInt f = 1;
    for (int c : flat[v].kids)
      f *= flat[c].tree->children.empty() ? BigInt(1) : BigInt(1) + rooted[c];
    rooted[v] = f;
    total += f;
  }
  return total;
}

std::map<std::string, std::vector<OracleDerivation>> oracle_parses(
    const FragmentBank& bank, const std::string& start_label,
    const std::vector<std::string>& sentence, const MatchPolicy& policy,
    std::size_t step_limit) {
  Search search{bank, sentence, policy, step_limit};
  std::map<std::string, std::vector<OracleDerivation>> parses;
  for (Partial& p : search.derive(start_label, 0, step_limit))
    if (p.end == sentence.size()) parses[p.tree].push_back(std::move(p.steps));
  for (auto& [tree, derivations] : parses) std::sort(derivations.begin(), derivations.end());
  return parses;
}

std::optional<Rational> oracle_rf_probability(const FragmentBank& bank,
                                              const OracleDerivation& steps,
                                              bool uniform_seed_weight) {
  Rational p = 1;
  for (const OracleStep& step : steps) {
    const FragmentEntry* entry = bank.find(step.root, step.erased_key);
    if (entry) {
      p *= Rational(entry->count, bank.class_totals.at(step.root));
    } else if (step.seeded > 0) {
      if (uniform_seed_weight) p *= Rational(1, step.seeded);
    } else {
      return std::nullopt;
    }
  }
  return p;
}

double chi_square_statistic(const std::map<std::string, double>& expected,
                            const std::map<std::string, std::uint64_t>& observed) {
  double stat = 0.0;
  for (const auto& [category, exp] : expected) {
    if (exp <= 0.0) throw std::invalid_argument("chi_square_statistic: expected <= 0");
    auto it = observed.find(category);
    double obs = it == observed.end() ? 0.0 : static_cast<double>(it->second);
    stat += (obs - exp) * (obs - exp) / exp;
  }
  for (const auto& [category, obs] : observed)
    if (obs > 0 && !expected.count(category))
      throw std::invalid_argument("chi_square_statistic: observed unknown category " +
                                  category);
  return stat;
}

double chi_square_critical_99(std::size_t df) {
  static const double kCritical[20] = {6.635,  9.210,  11.345, 13.277, 15.086,
                                       16.812, 18.475, 20.090, 21.666, 23.209,
                                       24.725, 26.217, 27.688, 29.141, 30.578,
                                       31.999, 33.409, 34.805, 36.191, 37.566};
  if (df < 1 || df > 20)
    throw std::invalid_argument("chi_square_critical_99: df out of range");
  return kCritical[df - 1];
}

Tree random_tree(Rng& rng, const std::vector<std::string>& labels,
                 const std::vector<std::string>& tags,
                 const std::vector<std::string>& words, int max_depth,
                 int max_branch) {
  Tree t;
  if (max_depth <= 1 || rng.below(4) == 0) {
    t.label = tags[rng.below(tags.size())];
    t.kind = SymbolKind::Preterminal;
    Tree w;
    w.label = words[rng.below(words.size())];
    w.kind = SymbolKind::Terminal;
    t.children.push_back(std::move(w));
    return t;
  }
  t.label = labels[rng.below(labels.size())];
  t.kind = SymbolKind::Nonterminal;
  std::size_t branch = 1 + rng.below(static_cast<std::uint64_t>(max_branch));
  for (std::size_t i = 0; i < branch; ++i)
    t.children.push_back(random_tree(rng, labels, tags, words, max_depth - 1, max_branch));
  return t;
}

std::string test_data_path(const std::string& name) {
  const char* base = std::getenv("DOP_TEST_DATA");
  std::string dir = base ? base : "tests/data";
  return dir + "/" + name;
}

}  // namespace dop::testing
