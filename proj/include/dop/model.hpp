#pragma once

#include "dop/bank.hpp"
#include "dop/numeric.hpp"
#include "dop/smoothing.hpp"

#include <optional>
#include <string>

namespace dop {

// Weight of a policy-seeded tag application under the relative-frequency
// model, which has no unseen mass of its own: a dummy count of 1, or 1 split
// uniformly over the candidate tags of the position.
enum class SeedWeight { One, UniformOverTags };

// Substitution probabilities, exact. Fragments are identified by root label
// plus wildcard-erased canonical key; bank membership always wins over
// seeded/instantiated status.
class ScoreModel {
 public:
  static ScoreModel relative_frequency(const FragmentBank& bank,
                                       SeedWeight seed_weight = SeedWeight::One);
  static ScoreModel good_turing(const FragmentBank& bank, const AdjustedModel& adjusted);

  // nullopt = the model cannot price this fragment (unseen under relative
  // frequency and not seeded).
  std::optional<Rational> lookup(const std::string& root, const std::string& erased_key,
                                 std::uint32_t seeded_tag_count) const;

  bool smoothed() const { return adjusted_ != nullptr; }
  const FragmentBank& bank() const { return *bank_; }

 private:
  const FragmentBank* bank_ = nullptr;
  const AdjustedModel* adjusted_ = nullptr;
  SeedWeight seed_weight_ = SeedWeight::One;
};

}  // namespace dop
