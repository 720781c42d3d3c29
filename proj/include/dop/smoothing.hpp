#pragma once

#include "dop/bank.hpp"
#include "dop/numeric.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace dop {

// Frequency-of-frequencies histogram of one substitution class.
struct FreqOfFreqs {
  std::string class_label;
  std::map<std::uint64_t, std::uint64_t> table;  // r -> N_r, observed r only
  std::uint64_t total_tokens = 0;                // N = sum r * N_r
  std::uint64_t observed_types = 0;              // sum N_r

  std::uint64_t n(std::uint64_t r) const {
    auto it = table.find(r);
    return it == table.end() ? 0 : it->second;
  }
};

FreqOfFreqs freq_of_freqs(const FragmentBank& bank, const std::string& class_label);

// r* = (r+1) * N_{r+1} / N_r, exact. Throws for r with N_r = 0.
Rational good_turing_adjust(const FreqOfFreqs& fof, std::uint64_t r);

// How many fragment types the class could have: for each distinct frontier
// template with k lexical positions, V^k fillings plus the template itself.
// Arbitrary precision — V^k dwarfs 64 bits already at small k.
struct PopulationEstimate {
  std::string class_label;
  BigInt total_types;
  BigInt unseen_types;  // N_0 = total_types - observed types
  std::uint64_t template_count = 0;
  std::size_t vocab_size = 0;
};

PopulationEstimate estimate_total_types(const FragmentBank& bank,
                                        const std::string& class_label,
                                        std::size_t vocab_size);

// r*(0) = N_1 / N_0; zero when the class has no hapaxes or no unseen mass.
Rational unseen_frequency(const FreqOfFreqs& fof, const PopulationEstimate& pop);

struct GtPolicy {
  // pure = formula everywhere (conservation holds exactly, top bucket zeroes
  // out). Otherwise adjust only while N_{r+1} > 0 and N_r >= floor; sparse
  // high-count buckets keep their raw r.
  bool pure = false;
  std::uint64_t floor = 5;
};

struct ClassAdjust {
  FreqOfFreqs fof;
  PopulationEstimate pop;
  std::map<std::uint64_t, Rational> adjusted;  // r -> r*(r) for observed r
  Rational unseen;                             // r*(0)
  Rational mass;  // sum N_r * r*(r) + N_0 * r*(0); the probability normalizer

  Rational adjusted_count(std::uint64_t r) const { return adjusted.at(r); }
};

struct AdjustedModel {
  GtPolicy policy;
  std::map<std::string, ClassAdjust> classes;
};

AdjustedModel build_adjusted_model(const FragmentBank& bank, const GtPolicy& policy);

// Plain-text report: r, N_r, adjusted r*, with the unseen row first.
std::string gt_table_text(const FreqOfFreqs& fof, const PopulationEstimate& pop,
                          const GtPolicy& policy);

}  // namespace dop
