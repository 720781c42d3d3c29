#include "dop/bank.hpp"

#include "dop/error.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace dop {

namespace {

// Every fragment rooted at `node`, cutting or expanding each internal child,
// within `budget` levels. Desk-scale corpora keep the combinatorics small; a
// depth cap bounds them further.
void options_for(const Tree& node, int budget, std::vector<FragNode>& out) {
  std::vector<std::vector<FragNode>> child_options(node.children.size());
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const Tree& c = node.children[i];
    if (c.kind == SymbolKind::Terminal) {
      child_options[i].push_back(terminal_leaf(c.label));
    } else if (c.leaf()) {
      child_options[i].push_back(tag_leaf(c.label));
    } else {
      child_options[i].push_back(open_slot(c.label));
      if (budget > 1) options_for(c, budget - 1, child_options[i]);
    }
  }
  // Cartesian product over the children's choices.
  std::vector<std::size_t> pick(node.children.size(), 0);
  for (;;) {
    FragNode f;
    f.form = FragForm::Internal;
    f.label = node.label;
    for (std::size_t i = 0; i < pick.size(); ++i)
      f.children.push_back(child_options[i][pick[i]]);
    out.push_back(std::move(f));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == child_options[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
}

void extract_into(const Tree& node, int budget,
                  std::map<std::string, FragmentEntry>& out) {
  if (node.leaf()) return;
  std::vector<FragNode> frags;
  options_for(node, budget, frags);
  for (FragNode& f : frags) {
    std::string key = fragment_key(f);
    auto [it, fresh] = out.try_emplace(std::move(key));
    if (fresh) it->second.fragment = std::move(f);
    ++it->second.count;
  }
  for (const Tree& c : node.children) extract_into(c, budget, out);
}

void collect_metadata(const Tree& t, FragmentBank& bank) {
  if (t.kind == SymbolKind::Preterminal) {
    bank.preterminals.insert(t.label);
    if (!t.leaf()) {
      bank.vocabulary.insert(t.children[0].label);
      bank.word_tags[t.children[0].label].insert(t.label);
    }
    return;
  }
  for (const Tree& c : t.children) collect_metadata(c, bank);
}

std::string escape_name(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\' || c == '\t' || c == '\n') out += '\\';
    out += c;
  }
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields{""};
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\\' && i + 1 < line.size()) {
      fields.back() += line[++i];
    } else if (line[i] == '\t') {
      fields.emplace_back();
    } else {
      fields.back() += line[i];
    }
  }
  return fields;
}

std::uint64_t parse_count(const std::string& s, std::size_t lineno) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("bank file line " + std::to_string(lineno) + ": bad count '" + s + "'");
  }
}

}  // namespace

const FragmentEntry* FragmentBank::find(const std::string& root,
                                        const std::string& key) const {
  auto cls = classes.find(root);
  if (cls == classes.end()) return nullptr;
  auto it = cls->second.find(key);
  return it == cls->second.end() ? nullptr : &it->second;
}

std::uint64_t FragmentBank::total_fragment_tokens() const {
  std::uint64_t n = 0;
  for (const auto& [label, total] : class_totals) n += total;
  return n;
}

std::uint64_t FragmentBank::distinct_fragments() const {
  std::uint64_t n = 0;
  for (const auto& [label, cls] : classes) n += cls.size();
  return n;
}

std::string FragmentBank::default_start_label() const {
  std::string best;
  std::uint64_t best_count = 0;
  for (const auto& [label, count] : root_counts) {
    if (count > best_count) {
      best = label;
      best_count = count;
    }
  }
  if (best.empty()) throw Error("bank has no root statistics");
  return best;
}

std::map<std::string, FragmentEntry> extract_fragments(const Tree& tree,
                                                       std::optional<int> max_depth) {
  if (max_depth && *max_depth < 1) throw std::invalid_argument("depth bound must be >= 1");
  validate_tree(tree);
  std::map<std::string, FragmentEntry> out;
  extract_into(tree, max_depth ? *max_depth : std::numeric_limits<int>::max(), out);
  return out;
}

FragmentBank build_bank(const Corpus& corpus, std::optional<int> max_depth) {
  FragmentBank bank;
  bank.max_depth = max_depth;
  for (const Tree& t : corpus.trees) {
    for (auto& [key, entry] : extract_fragments(t, max_depth)) {
      auto& slot = bank.classes[entry.fragment.label][key];
      if (slot.count == 0) slot.fragment = std::move(entry.fragment);
      slot.count += entry.count;
      bank.class_totals[slot.fragment.label] += entry.count;
    }
    collect_metadata(t, bank);
    ++bank.root_counts[t.label];
  }
  return bank;
}

std::optional<Rational> substitution_probability(const FragmentBank& bank,
                                                 const Fragment& fragment) {
  const FragmentEntry* e = bank.find(fragment.label, fragment_key(fragment));
  if (!e) return std::nullopt;
  return Rational(e->count, bank.class_totals.at(fragment.label));
}

void save_bank(const FragmentBank& bank, std::ostream& out) {
  out << "dop-bank 1\n";
  out << "max_depth\t" << (bank.max_depth ? std::to_string(*bank.max_depth) : "unbounded")
      << "\n";
  out << "roots";
  for (const auto& [label, count] : bank.root_counts)
    out << '\t' << escape_name(label) << ' ' << count;
  out << "\n";
  out << "preterminals";
  for (const std::string& p : bank.preterminals) out << '\t' << escape_name(p);
  out << "\n";
  for (const auto& [label, cls] : bank.classes) {
    for (const auto& [key, entry] : cls) {
      out << "frag\t" << escape_name(label) << '\t' << key << '\t' << entry.count << "\n";
    }
  }
}

FragmentBank load_bank(std::istream& in) {
  FragmentBank bank;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line) || line != "dop-bank 1")
    throw FormatError("bank file line 1: missing 'dop-bank 1' header");
  ++lineno;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f = split_tabs(line);
    if (f[0] == "max_depth") {
      if (f.size() != 2) throw FormatError("bank file line " + std::to_string(lineno) +
                                           ": max_depth needs one value");
      if (f[1] == "unbounded")
        bank.max_depth = std::nullopt;
      else
        bank.max_depth = static_cast<int>(parse_count(f[1], lineno));
    } else if (f[0] == "roots") {
      for (std::size_t i = 1; i < f.size(); ++i) {
        std::size_t sp = f[i].rfind(' ');
        if (sp == std::string::npos)
          throw FormatError("bank file line " + std::to_string(lineno) + ": bad root entry");
        bank.root_counts[f[i].substr(0, sp)] = parse_count(f[i].substr(sp + 1), lineno);
      }
    } else if (f[0] == "preterminals") {
      for (std::size_t i = 1; i < f.size(); ++i) bank.preterminals.insert(f[i]);
    } else if (f[0] == "frag") {
      if (f.size() != 4)
        throw FormatError("bank file line " + std::to_string(lineno) + ": frag needs 3 fields");
      Fragment frag;
      try {
        frag = parse_fragment(f[2]);
      } catch (const FormatError& e) {
        throw FormatError("bank file line " + std::to_string(lineno) + ": " + e.what());
      }
      if (frag.label != f[1])
        throw FormatError("bank file line " + std::to_string(lineno) +
                          ": root field does not match fragment");
      if (fragment_key(frag) != fragment_key(frag, false))
        throw FormatError("bank file line " + std::to_string(lineno) +
                          ": bank fragments cannot carry wildcard marks");
      std::uint64_t count = parse_count(f[3], lineno);
      if (count == 0)
        throw FormatError("bank file line " + std::to_string(lineno) + ": zero count");
      auto& slot = bank.classes[frag.label][fragment_key(frag)];
      if (slot.count != 0)
        throw FormatError("bank file line " + std::to_string(lineno) + ": duplicate fragment");
      slot.fragment = std::move(frag);
      slot.count = count;
      bank.class_totals[slot.fragment.label] += count;
    } else {
      throw FormatError("bank file line " + std::to_string(lineno) + ": unknown record '" +
                        f[0] + "'");
    }
  }
  // Lexical metadata is implied by the depth-1 lexical fragments.
  for (const auto& [label, cls] : bank.classes) {
    for (const auto& [key, entry] : cls) {
      const Fragment& frag = entry.fragment;
      std::vector<const FragNode*> stack{&frag};
      while (!stack.empty()) {
        const FragNode* n = stack.back();
        stack.pop_back();
        if (n->form == FragForm::TagLeaf) bank.preterminals.insert(n->label);
        for (const FragNode& c : n->children) {
          if (c.form == FragForm::Terminal) {
            bank.vocabulary.insert(c.label);
            bank.word_tags[c.label].insert(n->label);
            bank.preterminals.insert(n->label);
          } else {
            stack.push_back(&c);
          }
        }
      }
    }
  }
  return bank;
}

void save_bank_file(const FragmentBank& bank, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write bank file '" + path + "'");
  save_bank(bank, out);
  if (!out.flush()) throw IoError("failed writing bank file '" + path + "'");
}

FragmentBank load_bank_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open bank file '" + path + "'");
  return load_bank(in);
}

}  // namespace dop
