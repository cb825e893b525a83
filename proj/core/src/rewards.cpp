#include "editmbr/rewards.hpp"

#include <string>

#include "editmbr/errors.hpp"

namespace editmbr {

std::string_view to_string(RewardKind kind) {
  switch (kind) {
    case RewardKind::kRecall: return "recall";
    case RewardKind::kPrecision: return "precision";
    case RewardKind::kFBeta: return "f";
    case RewardKind::kFPaper: return "f-paper";
    case RewardKind::kJaccard: return "jaccard";
  }
  return "?";
}

std::optional<RewardKind> parse_reward_kind(std::string_view name) {
  for (RewardKind k : {RewardKind::kRecall, RewardKind::kPrecision, RewardKind::kFBeta,
                       RewardKind::kFPaper, RewardKind::kJaccard}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void RewardConfig::validate() const {
  if (!(beta > 0.0)) throw ValidationError("reward beta must be positive");
  if (kind == RewardKind::kFPaper && beta > 1.0) {
    throw ValidationError("f-paper reward requires k <= 1");
  }
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(empty_empty_value) || !in_unit(empty_denominator_value)) {
    throw ValidationError("empty-set reward conventions must lie in [0, 1]");
  }
}

std::size_t intersection_size(const EditSet& a, const EditSet& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    auto order = *i <=> *j;
    if (order < 0) {
      ++i;
    } else if (order > 0) {
      ++j;
    } else {
      ++count, ++i, ++j;
    }
  }
  return count;
}

double reward(const EditSet& ref, const EditSet& hyp, const RewardConfig& config) {
  const double n_ref = static_cast<double>(ref.size());
  const double n_hyp = static_cast<double>(hyp.size());
  if (ref.empty() && hyp.empty()) return config.empty_empty_value;

  const double common = static_cast<double>(intersection_size(ref, hyp));
  switch (config.kind) {
    case RewardKind::kRecall:
      return ref.empty() ? config.empty_denominator_value : common / n_ref;
    case RewardKind::kPrecision:
      return hyp.empty() ? config.empty_denominator_value : common / n_hyp;
    case RewardKind::kFBeta: {
      const double b2 = config.beta * config.beta;
      return (1.0 + b2) * common / (b2 * n_ref + n_hyp);
    }
    case RewardKind::kFPaper: {
      const double k = config.beta;
      return (1.0 + k * k) * common / (k * n_ref + n_hyp);
    }
    case RewardKind::kJaccard:
      return common / (n_ref + n_hyp - common);
  }
  return 0.0;
}

double expected_reward(const EditSet& hyp, std::span<const Candidate> reward_set,
                       const RewardConfig& config) {
  if (reward_set.empty()) throw ValidationError("expected reward needs a non-empty reward set");
  double total = 0.0;
  for (const Candidate& ref : reward_set) total += reward(ref.edits, hyp, config);
  return total / static_cast<double>(reward_set.size());
}

}  // namespace editmbr
