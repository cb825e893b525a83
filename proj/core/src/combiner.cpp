#include "editmbr/combiner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "editmbr/errors.hpp"
#include "parallel.hpp"

namespace editmbr {

namespace {

std::vector<EditSet> edit_sets(std::span<const Candidate> candidates) {
  std::vector<EditSet> sets;
  sets.reserve(candidates.size());
  for (const auto& c : candidates) sets.push_back(c.edits);
  return sets;
}

std::vector<Candidate> concat(std::span<const Candidate> a, std::span<const Candidate> b) {
  std::vector<Candidate> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<Candidate> build_reward_set(std::span<const Candidate> systems,
                                        std::span<const Candidate> votes, RewardSetSpec spec) {
  return spec == RewardSetSpec::kBaseVotes ? concat(systems, votes)
                                           : std::vector<Candidate>(systems.begin(), systems.end());
}

// Expected rewards are sums of ratios accumulated in candidate-specific order,
// so candidates with mathematically equal rewards can differ in the last bits.
// Differences below this relative tolerance count as ties.
constexpr double kTieTolerance = 1e-12;

bool clearly_greater(double a, double b) {
  return a > b + kTieTolerance * std::max(1.0, std::abs(b));
}

}  // namespace

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kMbr: return "mbr";
    case Strategy::kMbrVote: return "mbr-vote";
    case Strategy::kGreedy: return "greedy";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::kMbr, Strategy::kMbrVote, Strategy::kGreedy}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view to_string(RewardSetSpec spec) {
  return spec == RewardSetSpec::kBase ? "base" : "base+votes";
}

std::optional<RewardSetSpec> parse_reward_set(std::string_view name) {
  if (name == "base") return RewardSetSpec::kBase;
  if (name == "base+votes") return RewardSetSpec::kBaseVotes;
  return std::nullopt;
}

void CombineConfig::validate() const {
  reward.validate();
  if (greedy_pool_threshold == 0) throw ValidationError("greedy pool threshold must be >= 1");
}

CombineResult mbr_select(std::vector<Candidate> selection, std::span<const Candidate> reward_set,
                         const RewardFunction& reward_fn) {
  if (selection.empty()) throw ValidationError("MBR selection set is empty");
  if (reward_set.empty()) throw ValidationError("MBR reward set is empty");

  CombineResult result;
  result.expected_rewards.reserve(selection.size());
  for (const Candidate& hyp : selection) {
    double total = 0.0;
    for (const Candidate& ref : reward_set) total += reward_fn(ref.edits, hyp.edits);
    result.expected_rewards.push_back(total / static_cast<double>(reward_set.size()));
  }
  for (std::size_t k = 1; k < result.expected_rewards.size(); ++k) {
    if (clearly_greater(result.expected_rewards[k], result.expected_rewards[result.chosen_index])) {
      result.chosen_index = k;
    }
  }
  result.selection = std::move(selection);
  return result;
}

CombineResult mbr_select(std::vector<Candidate> selection, std::span<const Candidate> reward_set,
                         const RewardConfig& config) {
  return mbr_select(std::move(selection), reward_set,
                    [&config](const EditSet& ref, const EditSet& hyp) {
                      return reward(ref, hyp, config);
                    });
}

std::vector<Candidate> vote_candidates(std::span<const Candidate> systems,
                                       std::span<const std::size_t> priority) {
  const std::vector<EditSet> sets = edit_sets(systems);
  std::vector<Candidate> out;
  out.reserve(sets.size());
  for (std::size_t m = 1; m <= sets.size(); ++m) {
    out.push_back({vote_set(sets, m, priority), "vote-" + std::to_string(m)});
  }
  return out;
}

GreedyOutcome greedy_insert(EditSet start, std::vector<Edit> pool,
                            std::span<const Candidate> reward_set, const RewardConfig& config) {
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  GreedyOutcome out;
  out.edits = std::move(start);
  out.expected_reward = expected_reward(out.edits, reward_set, config);

  while (!pool.empty()) {
    std::size_t best = pool.size();
    double best_reward = out.expected_reward;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (!out.edits.admits(pool[k])) continue;
      double r = expected_reward(out.edits.with(pool[k]), reward_set, config);
      if (clearly_greater(r, best_reward)) {
        best = k;
        best_reward = r;
      }
    }
    if (best == pool.size()) break;
    out.trace.push_back({pool[best], out.expected_reward, best_reward});
    out.edits = out.edits.with(pool[best]);
    out.expected_reward = best_reward;
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

CombineResult greedy_combine(std::span<const Candidate> systems, const CombineConfig& config) {
  if (systems.empty()) throw ValidationError("greedy combination needs at least one system");
  const std::vector<EditSet> sets = edit_sets(systems);
  const std::size_t n = sets.size();
  const std::size_t threshold = std::min(config.greedy_pool_threshold, n);

  std::vector<Candidate> votes = vote_candidates(systems, config.priority);
  std::vector<Candidate> reward_set = build_reward_set(systems, votes, config.reward_set);

  const EditSet& start = votes.back().edits;  // vote-N, the intersection
  std::vector<Edit> pool;
  for (const Edit& e : votes[threshold - 1].edits) {
    if (!start.contains(e)) pool.push_back(e);
  }
  GreedyOutcome greedy = greedy_insert(start, std::move(pool), reward_set, config.reward);

  std::vector<Candidate> selection = concat(systems, votes);
  selection.push_back({std::move(greedy.edits), "greedy"});
  CombineResult result = mbr_select(std::move(selection), reward_set, config.reward);
  result.trace = std::move(greedy.trace);
  return result;
}

CombineResult combine_sentence(std::span<const Candidate> systems, const CombineConfig& config) {
  if (systems.empty()) throw ValidationError("combination needs at least one system");
  switch (config.strategy) {
    case Strategy::kMbr: {
      std::vector<Candidate> reward_set =
          config.reward_set == RewardSetSpec::kBase
              ? std::vector<Candidate>(systems.begin(), systems.end())
              : concat(systems, vote_candidates(systems, config.priority));
      return mbr_select({systems.begin(), systems.end()}, reward_set, config.reward);
    }
    case Strategy::kMbrVote: {
      std::vector<Candidate> votes = vote_candidates(systems, config.priority);
      std::vector<Candidate> reward_set = build_reward_set(systems, votes, config.reward_set);
      return mbr_select(concat(systems, votes), reward_set, config.reward);
    }
    case Strategy::kGreedy:
      return greedy_combine(systems, config);
  }
  throw ValidationError("unknown combination strategy");
}

std::vector<CombineResult> combine_corpus(const Corpus& corpus, const CombineConfig& config,
                                          std::size_t threads) {
  config.validate();
  for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
    if (corpus.entries[i].hypotheses.size() != corpus.entries.front().hypotheses.size()) {
      throw DataError("sentence " + std::to_string(i + 1) + " has " +
                      std::to_string(corpus.entries[i].hypotheses.size()) +
                      " hypotheses, expected " +
                      std::to_string(corpus.entries.front().hypotheses.size()));
    }
  }
  std::vector<CombineResult> results(corpus.entries.size());
  detail::parallel_for(corpus.entries.size(), threads, [&](std::size_t i) {
    std::vector<Candidate> systems = corpus.candidates(i);
    results[i] = combine_sentence(systems, config);
  });
  return results;
}

}  // namespace editmbr
