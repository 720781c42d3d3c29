#include "dop/model.hpp"

namespace dop {

ScoreModel ScoreModel::relative_frequency(const FragmentBank& bank, SeedWeight seed_weight) {
  ScoreModel m;
  m.bank_ = &bank;
  m.seed_weight_ = seed_weight;
  return m;
}

ScoreModel ScoreModel::good_turing(const FragmentBank& bank, const AdjustedModel& adjusted) {
  ScoreModel m;
  m.bank_ = &bank;
  m.adjusted_ = &adjusted;
  return m;
}

std::optional<Rational> ScoreModel::lookup(const std::string& root,
                                           const std::string& erased_key,
                                           std::uint32_t seeded_tag_count) const {
  const FragmentEntry* entry = bank_->find(root, erased_key);
  if (adjusted_) {
    auto cls = adjusted_->classes.find(root);
    if (cls == adjusted_->classes.end()) return std::nullopt;
    const ClassAdjust& ca = cls->second;
    if (entry) return ca.adjusted_count(entry->count) / ca.mass;
    return ca.unseen / ca.mass;
  }
  if (entry)
    return Rational(entry->count, bank_->class_totals.at(root));
  if (seeded_tag_count > 0) {
    // Dummy lexical application: probability 1 within its class so that the
    // ranking depends only on the surrounding fragments; optionally split
    // uniformly over the position's candidate tags.
    return seed_weight_ == SeedWeight::One ? Rational(1)
                                           : Rational(1, seeded_tag_count);
  }
  return std::nullopt;
}

}  // namespace dop
