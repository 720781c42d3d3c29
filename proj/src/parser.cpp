#include "dop/parser.hpp"

#include "dop/error.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

namespace dop {

namespace {

void collect_frontier(const FragNode& n, std::vector<const FragNode*>& out) {
  if (n.form != FragForm::Internal) {
    out.push_back(&n);
    return;
  }
  for (const FragNode& c : n.children) collect_frontier(c, out);
}

// Clone with some frontier terminals rewritten to the words they mismatched;
// the wildcard flag records the rewrite.
FragNode instantiate(const FragNode& n,
                     const std::map<const FragNode*, std::string>& subs) {
  FragNode out;
  out.form = n.form;
  out.wildcard = n.wildcard;
  out.label = n.label;
  if (n.form == FragForm::Terminal) {
    auto it = subs.find(&n);
    if (it != subs.end()) {
      out.label = it->second;
      out.wildcard = true;
    }
    return out;
  }
  for (const FragNode& c : n.children) out.children.push_back(instantiate(c, subs));
  return out;
}

struct BuildNode {
  std::uint32_t begin, end;
  std::string label;
  std::vector<Application> apps;
  std::map<std::pair<std::string, std::vector<std::uint32_t>>, std::size_t> seen;
};

struct ChartBuilder {
  const CompiledBank& cb;
  const std::vector<std::string>& sentence;
  const MatchPolicy& policy;

  std::vector<BuildNode> nodes;
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::string>, std::uint32_t> index;
  bool changed = false;

  std::uint32_t node_at(std::uint32_t i, std::uint32_t j, const std::string& label) {
    auto key = std::make_tuple(i, j, label);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    nodes.push_back(BuildNode{i, j, label, {}, {}});
    std::uint32_t id = static_cast<std::uint32_t>(nodes.size() - 1);
    index.emplace(std::move(key), id);
    changed = true;
    return id;
  }

  const std::uint32_t* find_node(std::uint32_t i, std::uint32_t j,
                                 const std::string& label) const {
    auto it = index.find(std::make_tuple(i, j, label));
    return it == index.end() ? nullptr : &it->second;
  }

  void add_app(std::uint32_t node_id, Fragment fragment,
               std::vector<std::uint32_t> children, std::uint32_t seeded) {
    std::string erased = fragment_key(fragment, false);
    BuildNode& node = nodes[node_id];
    auto probe = node.seen.find({erased, children});
    if (probe != node.seen.end()) {
      // Same counted identity, same children: one application. Prefer the
      // mark-free fragment when both an exact and a mismatch route exist.
      Application& have = node.apps[probe->second];
      if (fragment_key(have.fragment) != have.erased_key &&
          fragment_key(fragment) == erased) {
        have.fragment = std::move(fragment);
        changed = true;
      }
      return;
    }
    Application app;
    app.erased_key = erased;
    app.fragment = std::move(fragment);
    app.children = std::move(children);
    app.seeded_tag_count = seeded;
    node.seen.emplace(std::make_pair(app.erased_key, app.children), node.apps.size());
    node.apps.push_back(std::move(app));
    changed = true;
  }

  bool span_has_wildcard(std::uint32_t i, std::uint32_t j) const {
    for (std::uint32_t p = i; p < j; ++p)
      if (policy.wildcard_positions.count(p)) return true;
    return false;
  }

  // Backtracking match of entry's frontier over [i, j).
  void match(const CompiledBank::Entry& entry, std::uint32_t i, std::uint32_t j) {
    std::vector<std::uint32_t> children;
    std::map<const FragNode*, std::string> subs;
    step(entry, 0, i, i, j, children, subs);
  }

  void step(const CompiledBank::Entry& entry, std::size_t idx, std::uint32_t begin,
            std::uint32_t pos, std::uint32_t j, std::vector<std::uint32_t>& children,
            std::map<const FragNode*, std::string>& subs) {
    const auto& items = entry.frontier;
    if (idx == items.size()) {
      if (pos != j) return;
      Fragment inst =
          subs.empty() ? *entry.fragment : instantiate(*entry.fragment, subs);
      add_app(node_at(begin, j, entry.fragment->label), std::move(inst), children, 0);
      return;
    }
    const FragNode* item = items[idx];
    std::size_t remaining = items.size() - idx - 1;
    if (j - pos < 1 + remaining) return;  // every item consumes >= 1 position
    if (item->form == FragForm::Terminal) {
      if (sentence[pos] == item->label) {
        step(entry, idx + 1, begin, pos + 1, j, children, subs);
      } else if (policy.wildcard_positions.count(pos)) {
        subs.emplace(item, sentence[pos]);
        step(entry, idx + 1, begin, pos + 1, j, children, subs);
        subs.erase(item);
      }
      return;
    }
    if (item->form == FragForm::TagLeaf) {
      // Tag-string corpora: the input tokens are tags.
      if (sentence[pos] == item->label)
        step(entry, idx + 1, begin, pos + 1, j, children, subs);
      return;
    }
    // Open slot: consumes a chart node of the slot's label.
    for (std::uint32_t e = pos + 1; e + remaining <= j; ++e) {
      const std::uint32_t* hit = find_node(pos, e, item->label);
      if (!hit) continue;
      children.push_back(*hit);
      step(entry, idx + 1, begin, e, j, children, subs);
      children.pop_back();
    }
  }

  void try_span(std::uint32_t i, std::uint32_t j) {
    bool wild = span_has_wildcard(i, j);
    std::set<std::string> span_words;
    if (!wild)
      for (std::uint32_t p = i; p < j; ++p) span_words.insert(sentence[p]);
    for (const std::string& label : cb.class_labels()) {
      for (const CompiledBank::Entry& entry : cb.entries(label)) {
        if (entry.frontier.size() > j - i) continue;
        if (!wild) {
          bool ok = true;
          for (const std::string& w : entry.words)
            if (!span_words.count(w)) {
              ok = false;
              break;
            }
          if (!ok) continue;
        }
        match(entry, i, j);
      }
    }
  }
};

}  // namespace

ParseMode parse_mode_from_name(const std::string& name) {
  if (name == "dop1") return ParseMode::Dop1;
  if (name == "dop2") return ParseMode::Dop2;
  if (name == "dop3") return ParseMode::Dop3;
  if (name == "dop4") return ParseMode::Dop4;
  throw ConfigError("unknown parse mode '" + name + "' (expected dop1..dop4)");
}

std::string parse_mode_name(ParseMode mode) {
  switch (mode) {
    case ParseMode::Dop1: return "dop1";
    case ParseMode::Dop2: return "dop2";
    case ParseMode::Dop3: return "dop3";
    case ParseMode::Dop4: return "dop4";
  }
  throw std::invalid_argument("bad mode");
}

MatchPolicy classify_positions(const std::vector<std::string>& sentence,
                               const FragmentBank& bank, const Lexicon* lexicon,
                               ParseMode mode, const ClassifyOptions& options) {
  MatchPolicy policy;
  if (mode == ParseMode::Dop4 && !lexicon)
    throw ConfigError("dop4 requires an external lexicon");
  for (std::size_t pos = 0; pos < sentence.size(); ++pos) {
    const std::string& w = sentence[pos];
    bool known = bank.vocabulary.count(w) > 0;
    switch (mode) {
      case ParseMode::Dop1:
        break;
      case ParseMode::Dop2:
        if (!known) policy.open_tag_positions[pos] = bank.preterminals;
        break;
      case ParseMode::Dop3: {
        bool suspect = false;
        if (known && !options.ambiguous_tags.empty()) {
          auto it = bank.word_tags.find(w);
          if (it != bank.word_tags.end())
            for (const std::string& t : it->second)
              if (options.ambiguous_tags.count(t)) {
                suspect = true;
                break;
              }
        }
        if (!known || suspect) policy.wildcard_positions.insert(pos);
        break;
      }
      case ParseMode::Dop4: {
        // The dictionary pre-tags its words (known or not); only words absent
        // from both bank and dictionary keep the mismatch treatment.
        auto dict = lexicon->lookup(w);
        if (dict) policy.open_tag_positions[pos] = *dict;
        if (!dict && !known) policy.wildcard_positions.insert(pos);
        break;
      }
    }
  }
  return policy;
}

CompiledBank::CompiledBank(const FragmentBank& bank) : bank_(&bank) {
  default_start_ = bank.default_start_label();
  for (const auto& [label, cls] : bank.classes) {
    class_labels_.push_back(label);
    std::vector<Entry>& entries = by_class_[label];
    for (const auto& [key, fe] : cls) {
      Entry e;
      e.fragment = &fe.fragment;
      e.key = key;
      collect_frontier(fe.fragment, e.frontier);
      for (const FragNode* n : e.frontier)
        if (n->form == FragForm::Terminal) e.words.push_back(n->label);
      std::sort(e.words.begin(), e.words.end());
      entries.push_back(std::move(e));
    }
  }
}

const std::vector<CompiledBank::Entry>& CompiledBank::entries(
    const std::string& label) const {
  static const std::vector<Entry> empty;
  auto it = by_class_.find(label);
  return it == by_class_.end() ? empty : it->second;
}

DerivationForest build_forest(const CompiledBank& cb,
                              const std::vector<std::string>& sentence,
                              const MatchPolicy& policy,
                              const ParserOptions& options) {
  if (sentence.empty()) throw std::invalid_argument("cannot parse an empty sentence");
  for (const std::string& w : sentence)
    if (w.empty()) throw std::invalid_argument("empty token in sentence");

  DerivationForest forest;
  forest.sentence = sentence;
  std::string start = options.start_label.empty() ? cb.default_start() : options.start_label;

  ChartBuilder chart{cb, sentence, policy, {}, {}, false};

  // Policy-seeded lexical nodes: the word under each candidate tag.
  for (const auto& [pos, tags] : policy.open_tag_positions) {
    if (pos >= sentence.size())
      throw std::invalid_argument("seeded position beyond sentence end");
    for (const std::string& tag : tags) {
      Fragment f = internal_node(tag, {terminal_leaf(sentence[pos])});
      std::uint32_t id =
          chart.node_at(static_cast<std::uint32_t>(pos), static_cast<std::uint32_t>(pos + 1), tag);
      chart.add_app(id, std::move(f), {}, static_cast<std::uint32_t>(tags.size()));
    }
  }

  std::uint32_t n = static_cast<std::uint32_t>(sentence.size());
  for (std::uint32_t len = 1; len <= n; ++len) {
    for (std::uint32_t i = 0; i + len <= n; ++i) {
      // Fixpoint: unary fragments over this span can feed each other.
      do {
        chart.changed = false;
        chart.try_span(i, i + len);
      } while (chart.changed);
    }
  }

  const std::uint32_t* root = chart.find_node(0, n, start);
  if (!root) return forest;

  // Reachability plus cycle check, postorder = children before parents.
  std::vector<int> state(chart.nodes.size(), 0);
  std::vector<std::uint32_t> post;
  struct Frame {
    std::uint32_t id;
    std::size_t app = 0, child = 0;
  };
  std::vector<Frame> stack{{*root}};
  state[*root] = 1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const BuildNode& bn = chart.nodes[f.id];
    bool descended = false;
    while (f.app < bn.apps.size()) {
      const auto& children = bn.apps[f.app].children;
      if (f.child >= children.size()) {
        ++f.app;
        f.child = 0;
        continue;
      }
      std::uint32_t v = children[f.child++];
      if (state[v] == 1)
        throw Error("derivation forest contains a cycle (unary fragments loop)");
      if (state[v] == 0) {
        state[v] = 1;
        stack.push_back({v});
        descended = true;
        break;
      }
    }
    if (descended) continue;
    state[f.id] = 2;
    post.push_back(f.id);
    stack.pop_back();
  }

  // Renumber reachable nodes by (begin, end, label).
  std::vector<std::uint32_t> keep = post;
  std::sort(keep.begin(), keep.end(), [&](std::uint32_t a, std::uint32_t b) {
    const BuildNode& x = chart.nodes[a];
    const BuildNode& y = chart.nodes[b];
    return std::tie(x.begin, x.end, x.label) < std::tie(y.begin, y.end, y.label);
  });
  std::vector<std::uint32_t> renum(chart.nodes.size(), 0);
  for (std::uint32_t new_id = 0; new_id < keep.size(); ++new_id)
    renum[keep[new_id]] = new_id;

  forest.nodes.resize(keep.size());
  for (std::uint32_t new_id = 0; new_id < keep.size(); ++new_id) {
    BuildNode& bn = chart.nodes[keep[new_id]];
    ForestNode& fn = forest.nodes[new_id];
    fn.begin = bn.begin;
    fn.end = bn.end;
    fn.label = std::move(bn.label);
    fn.apps = std::move(bn.apps);
    for (Application& app : fn.apps)
      for (std::uint32_t& c : app.children) c = renum[c];
    std::sort(fn.apps.begin(), fn.apps.end(), [](const Application& a, const Application& b) {
      return std::tie(a.erased_key, a.children) < std::tie(b.erased_key, b.children);
    });
  }
  forest.root = renum[*root];
  forest.topo.reserve(post.size());
  for (std::uint32_t id : post) forest.topo.push_back(renum[id]);
  return forest;
}

DerivationForest build_forest(const FragmentBank& bank,
                              const std::vector<std::string>& sentence,
                              const MatchPolicy& policy, const ParserOptions& options) {
  CompiledBank cb(bank);
  return build_forest(cb, sentence, policy, options);
}

void dump_forest(const DerivationForest& forest, std::ostream& out) {
  out << "sentence";
  for (const std::string& w : forest.sentence) out << '\t' << w;
  out << '\n';
  if (forest.empty()) {
    out << "no-parse\n";
    return;
  }
  out << "root\t" << *forest.root << '\n';
  for (std::uint32_t id = 0; id < forest.nodes.size(); ++id) {
    const ForestNode& n = forest.nodes[id];
    for (std::size_t a = 0; a < n.apps.size(); ++a) {
      const Application& app = n.apps[a];
      out << id << '\t' << n.begin << '\t' << n.end << '\t' << n.label << '\t' << a << '\t'
          << fragment_key(app.fragment);
      out << '\t';
      for (std::size_t c = 0; c < app.children.size(); ++c) {
        if (c) out << ' ';
        out << app.children[c];
      }
      if (app.seeded_tag_count) out << "\tseeded=" << app.seeded_tag_count;
      out << '\n';
    }
  }
}

}  // namespace dop
