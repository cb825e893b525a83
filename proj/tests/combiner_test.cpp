#include "editmbr/combiner.hpp"

#include <gtest/gtest.h>

#include <random>

#include "editmbr/errors.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace editmbr {
namespace {

using testing::make_edit;

const Edit kB = make_edit(1, 2, {"B"});
const Edit kX = make_edit(1, 2, {"X"});
const Edit kD = make_edit(3, 3, {"d"});

std::vector<Candidate> fixture() {
  return {{EditSet(3, {kB}), "h1"}, {EditSet(3, {kB, kD}), "h2"}, {EditSet(3), "h3"}};
}

RewardConfig rcfg(RewardKind kind, double beta = 0.5) {
  RewardConfig c;
  c.kind = kind;
  c.beta = beta;
  return c;
}

void expect_rewards(const CombineResult& r, std::vector<double> expected) {
  ASSERT_EQ(r.expected_rewards.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(r.expected_rewards[i], expected[i], 1e-4) << "candidate " << i;
  }
}

TEST(MbrSelect, RecallPicksLargestSet) {
  auto c = fixture();
  CombineResult r = mbr_select(c, c, rcfg(RewardKind::kRecall));
  EXPECT_EQ(r.chosen().label, "h2");
  expect_rewards(r, {0.8333, 1.0, 0.3333});
}

TEST(MbrSelect, PrecisionPicksEmptySet) {
  auto c = fixture();
  CombineResult r = mbr_select(c, c, rcfg(RewardKind::kPrecision));
  EXPECT_EQ(r.chosen().label, "h3");
  expect_rewards(r, {0.6667, 0.5, 1.0});
}

TEST(MbrSelect, FHalfPicksConsensus) {
  auto c = fixture();
  CombineResult r = mbr_select(c, c, rcfg(RewardKind::kFBeta));
  EXPECT_EQ(r.chosen().label, "h1");
  expect_rewards(r, {0.6111, 0.5185, 0.3333});
}

TEST(MbrSelect, Singleton) {
  std::vector<Candidate> one{fixture()[0]};
  CombineResult r = mbr_select(one, one, rcfg(RewardKind::kFBeta));
  EXPECT_EQ(r.chosen().label, "h1");
  EXPECT_DOUBLE_EQ(r.expected_rewards[0], 1.0);
}

TEST(MbrSelect, FirstMaximumWinsTies) {
  std::vector<Candidate> twins{{EditSet(3, {kB}), "first"}, {EditSet(3, {kB}), "second"}};
  EXPECT_EQ(mbr_select(twins, twins, rcfg(RewardKind::kFBeta)).chosen().label, "first");
}

TEST(MbrSelect, EmptySetsThrow) {
  auto c = fixture();
  EXPECT_THROW(mbr_select({}, c, rcfg(RewardKind::kFBeta)), ValidationError);
  EXPECT_THROW(mbr_select(c, std::vector<Candidate>{}, rcfg(RewardKind::kFBeta)), ValidationError);
}

TEST(VoteCandidates, Examples) {
  auto votes = vote_candidates(fixture());
  ASSERT_EQ(votes.size(), 3u);
  EXPECT_EQ(votes[0].label, "vote-1");
  EXPECT_EQ(votes[0].edits, EditSet(3, {kB, kD}));
  EXPECT_EQ(votes[1].edits, EditSet(3, {kB}));
  EXPECT_EQ(votes[2].edits, EditSet(3));

  std::vector<Candidate> same{{EditSet(3, {kB}), "a"}, {EditSet(3, {kB}), "b"}, {EditSet(3, {kB}), "c"}};
  for (const auto& v : vote_candidates(same)) EXPECT_EQ(v.edits, EditSet(3, {kB}));

  std::vector<Candidate> clash{{EditSet(3, {kB}), "a"}, {EditSet(3, {kX}), "b"}, {EditSet(3, {kB}), "c"}};
  auto cv = vote_candidates(clash);
  EXPECT_EQ(cv[0].edits, EditSet(3, {kB}));
  EXPECT_EQ(cv[1].edits, EditSet(3, {kB}));
  EXPECT_EQ(cv[2].edits, EditSet(3));
}

TEST(GreedyCombine, DefaultPool) {
  CombineConfig config;
  config.strategy = Strategy::kGreedy;
  CombineResult r = greedy_combine(fixture(), config);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].edit, kB);
  EXPECT_NEAR(r.trace[0].before, 0.3333, 1e-4);
  EXPECT_NEAR(r.trace[0].after, 0.6111, 1e-4);
  ASSERT_EQ(r.selection.size(), 7u);
  EXPECT_EQ(r.selection.back().label, "greedy");
  EXPECT_EQ(r.selection.back().edits, EditSet(3, {kB}));
  // greedy ties with h1 and loses on order
  EXPECT_EQ(r.chosen().label, "h1");
}

TEST(GreedyCombine, UnionPoolRejectsWorseningInsertion) {
  CombineConfig config;
  config.strategy = Strategy::kGreedy;
  config.greedy_pool_threshold = 1;
  CombineResult r = greedy_combine(fixture(), config);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].edit, kB);
  EXPECT_EQ(r.selection.back().edits, EditSet(3, {kB}));
  // inserting d afterwards would drop the reward to 0.5185
  EXPECT_NEAR(expected_reward(EditSet(3, {kB, kD}), fixture(), config.reward), 0.5185, 1e-4);
}

TEST(GreedyCombine, IdenticalSystems) {
  std::vector<Candidate> same{{EditSet(3, {kB, kD}), "a"}, {EditSet(3, {kB, kD}), "b"}};
  CombineConfig config;
  config.strategy = Strategy::kGreedy;
  CombineResult r = greedy_combine(same, config);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_EQ(r.selection.back().edits, EditSet(3, {kB, kD}));
}

TEST(GreedyCombine, SingleSystemClampsThreshold) {
  std::vector<Candidate> one{{EditSet(3, {kB}), "only"}};
  CombineConfig config;
  config.strategy = Strategy::kGreedy;
  CombineResult r = greedy_combine(one, config);
  EXPECT_EQ(r.chosen().edits, EditSet(3, {kB}));
}

TEST(GreedyInsert, SkipsConflictingPoolEdits) {
  std::vector<Candidate> refs{{EditSet(3, {kX}), "a"}, {EditSet(3, {kX}), "b"}};
  GreedyOutcome g = greedy_insert(EditSet(3, {kB}), {kX, kD}, refs, rcfg(RewardKind::kRecall));
  for (const Edit& e : g.edits) EXPECT_NE(e, kX);
}

TEST(CombineSentence, StrategiesShapeSelectionSet) {
  CombineConfig config;
  config.strategy = Strategy::kMbr;
  EXPECT_EQ(combine_sentence(fixture(), config).selection.size(), 3u);
  config.strategy = Strategy::kMbrVote;
  CombineResult vote = combine_sentence(fixture(), config);
  EXPECT_EQ(vote.selection.size(), 6u);
  EXPECT_EQ(vote.chosen().edits, EditSet(3, {kB}));
  config.strategy = Strategy::kGreedy;
  EXPECT_EQ(combine_sentence(fixture(), config).selection.size(), 7u);
  EXPECT_THROW(combine_sentence({}, config), ValidationError);
}

TEST(CombineSentence, EnlargedRewardSet) {
  CombineConfig config;
  config.strategy = Strategy::kMbrVote;
  config.reward_set = RewardSetSpec::kBaseVotes;
  CombineResult r = combine_sentence(fixture(), config);
  // reward set is now h1, h2, h3, vote-1 {B,d}, vote-2 {B}, vote-3 {}
  std::vector<Candidate> refs = fixture();
  for (auto& v : vote_candidates(fixture())) refs.push_back(v);
  for (std::size_t k = 0; k < r.selection.size(); ++k) {
    EXPECT_NEAR(r.expected_rewards[k], testing::brute_expected(r.selection[k].edits, refs, config.reward),
                1e-12);
  }
}

Corpus three_sentence_corpus() {
  Corpus corpus;
  corpus.system_names = {"a", "b", "c"};
  corpus.entries.push_back({Sentence{{"a", "b", "c"}}, {EditSet(3, {kB}), EditSet(3, {kB, kD}), EditSet(3)}});
  corpus.entries.push_back({Sentence{{"x", "y"}}, {EditSet(2, {make_edit(0, 1, {"X"})}),
                                                   EditSet(2, {make_edit(0, 1, {"X"})}),
                                                   EditSet(2, {make_edit(0, 1, {"X"})})}});
  corpus.entries.push_back({Sentence{{"p"}}, {EditSet(1), EditSet(1, {make_edit(1, 1, {"q"})}), EditSet(1)}});
  return corpus;
}

TEST(CombineCorpus, InputOrderAndConsensus) {
  CombineConfig config;
  auto results = combine_corpus(three_sentence_corpus(), config);
  ASSERT_EQ(results.size(), 3u);
  EXPECT_EQ(results[0].chosen().edits, EditSet(3, {kB}));
  EXPECT_EQ(results[1].chosen().edits, EditSet(2, {make_edit(0, 1, {"X"})}));
  EXPECT_TRUE(results[2].chosen().edits.empty());
  EXPECT_TRUE(combine_corpus(Corpus{}, config).empty());
}

TEST(CombineCorpus, RaggedHypothesesThrow) {
  Corpus corpus = three_sentence_corpus();
  corpus.entries[1].hypotheses.pop_back();
  EXPECT_THROW(combine_corpus(corpus, CombineConfig{}), DataError);
}

TEST(CombineCorpus, ThreadCountDoesNotChangeResults) {
  std::mt19937 rng(31);
  Corpus corpus;
  corpus.system_names = {"a", "b", "c", "d"};
  for (int i = 0; i < 200; ++i) {
    std::size_t len = testing::uniform(rng, 0, 10);
    corpus.entries.push_back({Sentence{std::vector<std::string>(len, "t")}, testing::random_systems(rng, 4, len, 6)});
  }
  for (Strategy s : {Strategy::kMbr, Strategy::kMbrVote, Strategy::kGreedy}) {
    CombineConfig config;
    config.strategy = s;
    auto serial = combine_corpus(corpus, config, 1);
    EXPECT_EQ(combine_corpus(corpus, config, 1), serial);
    EXPECT_EQ(combine_corpus(corpus, config, 4), serial);
    EXPECT_EQ(combine_corpus(corpus, config, 8), serial);
  }
}

TEST(CombinerProperties, ArgmaxMatchesBruteForce) {
  std::mt19937 rng(5150);
  for (int i = 0; i < 300; ++i) {
    std::size_t len = testing::uniform(rng, 1, 8);
    auto systems = testing::as_candidates(testing::random_systems(rng, testing::uniform(rng, 1, 5), len, 7));
    for (RewardKind k : {RewardKind::kRecall, RewardKind::kPrecision, RewardKind::kFBeta, RewardKind::kJaccard}) {
      CombineResult r = mbr_select(systems, systems, rcfg(k));
      double chosen = testing::brute_expected(r.chosen().edits, systems, rcfg(k));
      for (const auto& c : systems) EXPECT_GE(chosen + 1e-12, testing::brute_expected(c.edits, systems, rcfg(k)));
    }
  }
}

TEST(CombinerProperties, AffineRewardTransformKeepsChoice) {
  std::mt19937 rng(616);
  for (int i = 0; i < 300; ++i) {
    std::size_t len = testing::uniform(rng, 1, 8);
    auto systems = testing::as_candidates(testing::random_systems(rng, 3, len, 6));
    auto votes = vote_candidates(systems);
    std::vector<Candidate> selection = systems;
    selection.insert(selection.end(), votes.begin(), votes.end());
    RewardConfig c = rcfg(RewardKind::kFBeta);
    std::size_t plain = mbr_select(selection, systems, c).chosen_index;
    for (auto [a, b] : {std::pair{2.0, 0.0}, std::pair{0.5, 3.0}, std::pair{7.0, -1.0}}) {
      auto transformed = mbr_select(selection, systems, [&](const EditSet& ref, const EditSet& hyp) {
        return a * reward(ref, hyp, c) + b;
      });
      EXPECT_EQ(transformed.chosen_index, plain) << "a=" << a << " b=" << b;
    }
  }
}

TEST(CombinerProperties, GreedyBoundedByExhaustiveSearch) {
  std::mt19937 rng(808);
  int checked = 0;
  while (checked < 200) {
    std::size_t len = testing::uniform(rng, 2, 9);
    auto systems = testing::as_candidates(testing::random_systems(rng, 3, len, 10));
    CombineConfig config;
    config.strategy = Strategy::kGreedy;
    config.greedy_pool_threshold = 1;
    auto votes = vote_candidates(systems);
    const EditSet& start = votes.back().edits;
    std::vector<Edit> pool;
    for (const Edit& e : votes.front().edits) {
      if (!start.contains(e)) pool.push_back(e);
    }
    if (pool.size() > 12) continue;
    ++checked;
    GreedyOutcome g = greedy_insert(start, pool, systems, config.reward);
    double best = testing::exhaustive_best(start, pool, systems, config.reward);
    EXPECT_LE(g.expected_reward, best + 1e-12);
    EXPECT_GE(g.expected_reward, expected_reward(start, systems, config.reward));
    for (std::size_t k = 0; k < g.trace.size(); ++k) {
      EXPECT_GT(g.trace[k].after, g.trace[k].before);
      if (k) EXPECT_EQ(g.trace[k].before, g.trace[k - 1].after);
    }
  }
}

TEST(CombinerProperties, RicherSelectionNeverHurts) {
  std::mt19937 rng(4242);
  for (int i = 0; i < 300; ++i) {
    std::size_t len = testing::uniform(rng, 1, 8);
    auto systems = testing::as_candidates(testing::random_systems(rng, 3, len, 7));
    CombineConfig config;
    auto best = [](const CombineResult& r) { return r.expected_rewards[r.chosen_index]; };
    config.strategy = Strategy::kMbr;
    double base = best(combine_sentence(systems, config));
    config.strategy = Strategy::kMbrVote;
    double with_votes = best(combine_sentence(systems, config));
    config.strategy = Strategy::kGreedy;
    double with_greedy = best(combine_sentence(systems, config));
    EXPECT_GE(with_votes, base);
    EXPECT_GE(with_greedy, with_votes);
  }
}

TEST(StrategyNames, Parse) {
  EXPECT_EQ(parse_strategy("mbr-vote"), Strategy::kMbrVote);
  EXPECT_FALSE(parse_strategy("beam").has_value());
  EXPECT_EQ(parse_reward_set("base+votes"), RewardSetSpec::kBaseVotes);
  EXPECT_FALSE(parse_reward_set("all").has_value());
}

}  // namespace
}  // namespace editmbr
