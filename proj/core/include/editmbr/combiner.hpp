#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "editmbr/corpus.hpp"
#include "editmbr/edit.hpp"
#include "editmbr/rewards.hpp"

namespace editmbr {

// What the selection set contains:
//   kMbr      base systems
//   kMbrVote  base systems + vote-1 .. vote-N
//   kGreedy   base systems + vote-1 .. vote-N + the greedy insertion result
enum class Strategy { kMbr, kMbrVote, kGreedy };

// Which candidates the expected reward is averaged over.
enum class RewardSetSpec { kBase, kBaseVotes };

std::string_view to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view name);  // mbr, mbr-vote, greedy
std::string_view to_string(RewardSetSpec spec);
std::optional<RewardSetSpec> parse_reward_set(std::string_view name);  // base, base+votes

struct CombineConfig {
  Strategy strategy = Strategy::kMbr;
  RewardConfig reward;
  RewardSetSpec reward_set = RewardSetSpec::kBase;
  // Greedy insertion draws from the vote set with at least this many votes.
  // Values above the number of systems are treated as N.
  std::size_t greedy_pool_threshold = 2;
  // System indices, most trusted first; empty means input order. Used to break
  // vote-count ties when resolving conflicting edits.
  std::vector<std::size_t> priority;

  void validate() const;
};

struct GreedyStep {
  Edit edit;
  double before = 0.0;
  double after = 0.0;

  friend bool operator==(const GreedyStep&, const GreedyStep&) = default;
};

struct CombineResult {
  // The selection set in tie-break order, with the expected reward of each.
  std::vector<Candidate> selection;
  std::vector<double> expected_rewards;
  std::size_t chosen_index = 0;
  // Committed greedy insertions; empty for the other strategies.
  std::vector<GreedyStep> trace;

  const Candidate& chosen() const { return selection.at(chosen_index); }

  friend bool operator==(const CombineResult&, const CombineResult&) = default;
};

using RewardFunction = std::function<double(const EditSet& ref, const EditSet& hyp)>;

// Picks the member of `selection` with the highest mean reward against
// `reward_set`. The first maximal candidate wins ties; rewards within a
// relative 1e-12 of each other are ties. Throws ValidationError
// when either set is empty.
CombineResult mbr_select(std::vector<Candidate> selection, std::span<const Candidate> reward_set,
                         const RewardConfig& config);
CombineResult mbr_select(std::vector<Candidate> selection, std::span<const Candidate> reward_set,
                         const RewardFunction& reward_fn);

// vote-1 .. vote-N, where vote-m holds the conflict-resolved edits proposed by
// at least m systems.
std::vector<Candidate> vote_candidates(std::span<const Candidate> systems,
                                       std::span<const std::size_t> priority = {});

struct GreedyOutcome {
  EditSet edits;
  double expected_reward = 0.0;
  std::vector<GreedyStep> trace;
};

// Best-first insertion: each round evaluates every pool edit that fits the
// working set and commits the one with the highest expected reward, provided
// it strictly beats the current set. Stops when no insertion improves. Ties
// between pool edits go to the earliest in canonical order.
GreedyOutcome greedy_insert(EditSet start, std::vector<Edit> pool,
                            std::span<const Candidate> reward_set, const RewardConfig& config);

// Starts from the intersection of the systems, inserts from the pool of edits
// with at least `greedy_pool_threshold` votes, then runs mbr_select over base
// systems, vote candidates and the greedy result.
CombineResult greedy_combine(std::span<const Candidate> systems, const CombineConfig& config);

// Dispatches on config.strategy. Throws ValidationError for an empty system list.
CombineResult combine_sentence(std::span<const Candidate> systems, const CombineConfig& config);

// Combines every sentence independently using up to `threads` workers. Results
// are in input order regardless of scheduling. Throws DataError when entries
// have differing numbers of hypotheses.
std::vector<CombineResult> combine_corpus(const Corpus& corpus, const CombineConfig& config,
                                          std::size_t threads = 1);

}  // namespace editmbr
