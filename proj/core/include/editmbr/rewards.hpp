#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "editmbr/edit.hpp"

namespace editmbr {

// Edit-set rewards R(ref, hyp). `ref` plays the part of the pseudo-reference
// edits, `hyp` the edits being scored. With c = |ref ∩ hyp|:
//
//   kRecall     c / |ref|
//   kPrecision  c / |hyp|
//   kFBeta      (1 + β²) c / (β² |ref| + |hyp|)     standard F-β
//   kFPaper     (1 + k²) c / (k |ref| + |hyp|)      k taken from `beta`
//   kJaccard    c / |ref ∪ hyp|
//
// kFPaper keeps the linear weight on |ref| of the original formulation. For
// k != 1 it is not the harmonic F-score (identical non-empty sets score
// (1 + k²) / (1 + k)), so kFBeta is the default. Only 0 < k <= 1 is accepted
// for kFPaper; larger k would push rewards above 1.
enum class RewardKind { kRecall, kPrecision, kFBeta, kFPaper, kJaccard };

std::string_view to_string(RewardKind kind);

// Accepts the CLI spellings: recall, precision, f, f-paper, jaccard.
std::optional<RewardKind> parse_reward_kind(std::string_view name);

struct RewardConfig {
  RewardKind kind = RewardKind::kFBeta;
  // β for kFBeta, k for kFPaper. Must be > 0.
  double beta = 0.5;
  // Reward when both sets are empty.
  double empty_empty_value = 1.0;
  // Recall with an empty ref, or precision with an empty hyp (the other side
  // non-empty).
  double empty_denominator_value = 1.0;

  // Throws ValidationError when beta <= 0, when kFPaper has k > 1, or when a
  // convention value is outside [0, 1].
  void validate() const;
};

// |a ∩ b| under edit_equal, by a merge walk over the canonical order.
std::size_t intersection_size(const EditSet& a, const EditSet& b);

double reward(const EditSet& ref, const EditSet& hyp, const RewardConfig& config);

// Mean of reward(c.edits, hyp) over the reward set: every member is treated as
// an equally likely reference. Throws ValidationError on an empty reward set.
double expected_reward(const EditSet& hyp, std::span<const Candidate> reward_set,
                       const RewardConfig& config);

}  // namespace editmbr
