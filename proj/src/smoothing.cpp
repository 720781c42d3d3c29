#include "dop/smoothing.hpp"

#include "dop/error.hpp"

#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dop {

namespace {

Rational adjusted_or_raw(const FreqOfFreqs& fof, std::uint64_t r, const GtPolicy& policy) {
  if (policy.pure) return good_turing_adjust(fof, r);
  if (fof.n(r + 1) > 0 && fof.n(r) >= policy.floor) return good_turing_adjust(fof, r);
  return Rational(r);
}

std::string format_rational(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", to_double(q));
  return buf;
}

}  // namespace

FreqOfFreqs freq_of_freqs(const FragmentBank& bank, const std::string& class_label) {
  auto cls = bank.classes.find(class_label);
  if (cls == bank.classes.end())
    throw std::invalid_argument("unknown substitution class '" + class_label + "'");
  FreqOfFreqs fof;
  fof.class_label = class_label;
  for (const auto& [key, entry] : cls->second) {
    ++fof.table[entry.count];
    fof.total_tokens += entry.count;
    ++fof.observed_types;
  }
  return fof;
}

Rational good_turing_adjust(const FreqOfFreqs& fof, std::uint64_t r) {
  std::uint64_t nr = fof.n(r);
  if (nr == 0)
    throw std::invalid_argument("no types with frequency " + std::to_string(r) + " in class '" +
                                fof.class_label + "'");
  return Rational(BigInt(r + 1) * fof.n(r + 1), BigInt(nr));
}

PopulationEstimate estimate_total_types(const FragmentBank& bank,
                                        const std::string& class_label,
                                        std::size_t vocab_size) {
  auto cls = bank.classes.find(class_label);
  if (cls == bank.classes.end())
    throw std::invalid_argument("unknown substitution class '" + class_label + "'");
  if (vocab_size == 0) throw std::invalid_argument("vocabulary size must be positive");

  // Distinct frontier templates with their lexical-slot counts.
  std::map<std::string, int> templates;
  for (const auto& [key, entry] : cls->second) {
    FrontierTemplate t = template_of(entry.fragment);
    templates.emplace(fragment_key(t.skeleton), t.lexical_slots);
  }

  PopulationEstimate pop;
  pop.class_label = class_label;
  pop.template_count = templates.size();
  pop.vocab_size = vocab_size;
  BigInt v(static_cast<std::uint64_t>(vocab_size));
  for (const auto& [skel, k] : templates)
    pop.total_types += boost::multiprecision::pow(v, static_cast<unsigned>(k));
  pop.total_types += pop.template_count;
  pop.unseen_types = pop.total_types - BigInt(cls->second.size());
  if (pop.unseen_types < 0)
    throw Error("class '" + class_label + "' has more observed types than the population");
  return pop;
}

Rational unseen_frequency(const FreqOfFreqs& fof, const PopulationEstimate& pop) {
  if (pop.unseen_types == 0) return Rational(0);
  return Rational(BigInt(fof.n(1)), pop.unseen_types);
}

AdjustedModel build_adjusted_model(const FragmentBank& bank, const GtPolicy& policy) {
  AdjustedModel model;
  model.policy = policy;
  for (const auto& [label, cls] : bank.classes) {
    ClassAdjust& ca = model.classes[label];
    ca.fof = freq_of_freqs(bank, label);
    ca.pop = estimate_total_types(bank, label, bank.vocab_size());
    for (const auto& [r, nr] : ca.fof.table)
      ca.adjusted[r] = adjusted_or_raw(ca.fof, r, policy);
    ca.unseen = unseen_frequency(ca.fof, ca.pop);
    Rational mass(0);
    for (const auto& [r, nr] : ca.fof.table) mass += Rational(nr) * ca.adjusted.at(r);
    mass += Rational(ca.pop.unseen_types) * ca.unseen;
    ca.mass = mass;
    if (ca.mass == 0)
      throw Error("adjusted mass of class '" + label + "' is zero; nothing can be scored");
  }
  return model;
}

std::string gt_table_text(const FreqOfFreqs& fof, const PopulationEstimate& pop,
                          const GtPolicy& policy) {
  std::ostringstream out;
  out << "class\t" << fof.class_label << "\n";
  out << "tokens\t" << fof.total_tokens << "\n";
  out << "types\t" << fof.observed_types << "\n";
  out << "population\t" << pop.total_types.str() << "\n";
  out << "r\tN_r\tr*\n";
  out << "0\t" << pop.unseen_types.str() << "\t"
      << format_rational(unseen_frequency(fof, pop)) << "\n";
  Rational mass = Rational(pop.unseen_types) * unseen_frequency(fof, pop);
  for (const auto& [r, nr] : fof.table) {
    Rational adjusted = adjusted_or_raw(fof, r, policy);
    mass += Rational(nr) * adjusted;
    out << r << '\t' << nr << '\t' << format_rational(adjusted) << "\n";
  }
  // Sum of N_r * r* over all rows; equals the token count under the pure
  // adjustment (mass conservation), and drifts only where the floor keeps
  // raw counts.
  out << "conservation\t" << format_rational(mass) << "\n";
  return out.str();
}

}  // namespace dop
