#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rumorsim/error.hpp"
#include "rumorsim/evaluation.hpp"
#include "rumorsim/similarity_cache.hpp"

namespace rumorsim {
namespace {

ProfileMap labeled(std::initializer_list<std::pair<UserId, bool>> labels) {
  ProfileMap p;
  for (auto [u, diffuser] : labels) p[u] = {u, TopicSet{"x"}, 0, diffuser};
  return p;
}

TEST(Evaluate, PerfectAndComplement) {
  const auto profiles = labeled({{1, true}, {2, true}, {3, false}, {4, false}});
  const std::vector<UserId> exact{1, 2};
  const auto r = evaluate(exact, profiles);
  EXPECT_EQ(r.true_pos, 2u);
  EXPECT_EQ(r.true_neg, 2u);
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_EQ(r.error, 0.0);

  const std::vector<UserId> inverted{3, 4};
  const auto w = evaluate(inverted, profiles);
  EXPECT_EQ(w.false_pos, 2u);
  EXPECT_EQ(w.false_neg, 2u);
  EXPECT_EQ(w.accuracy, 0.0);
  EXPECT_EQ(w.predicted_count, 2u);
}

TEST(Evaluate, UnprofiledPredictionsAreIgnored) {
  const auto profiles = labeled({{1, true}, {2, false}});
  const std::vector<UserId> predicted{1, 99};
  const auto r = evaluate(predicted, profiles);
  EXPECT_EQ(r.total(), 2u);
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_THROW(evaluate(predicted, ProfileMap{}), ConfigError);
}

TEST(Evaluate, AccuracyAndErrorSumToOne) {
  std::mt19937_64 rng(81);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < 200; ++i) {
    ProfileMap profiles;
    std::vector<UserId> predicted;
    for (UserId u = 1; u <= 25; ++u) {
      profiles[u] = {u, TopicSet{}, 0, coin(rng)};
      if (coin(rng)) predicted.push_back(u);
    }
    const auto r = evaluate(predicted, profiles);
    EXPECT_EQ(r.total(), 25u);
    EXPECT_NEAR(r.accuracy + r.error, 1.0, 1e-15);
    std::size_t tp = 0;
    for (UserId u : predicted) tp += profiles[u].observed_diffuser ? 1 : 0;
    EXPECT_EQ(r.true_pos, tp);
  }
}

TEST(Sweep, RowsMatchDirectEvaluation) {
  std::mt19937_64 rng(82);
  const auto g = SocialGraph::build(oracle::random_edges(rng, 60, 0.06), oracle::node_ids(60));
  auto profiles = oracle::random_profiles(rng, g.nodes(), 8, 4);
  std::bernoulli_distribution coin(0.4);
  for (auto& [id, p] : profiles) p.observed_diffuser = coin(rng);
  const RumorContent rumor{TopicSet{"topic1", "topic2"}};
  const std::vector<UserId> initials{1, 2};
  const std::vector<MetricKind> metrics{MetricKind::Cosine, MetricKind::JaccardSet,
                                        MetricKind::Dice, MetricKind::Average};
  for (auto algorithm : {GatedAlgorithm::UserUser, GatedAlgorithm::UserContent}) {
    const auto rows = metric_sweep(g, profiles, rumor, initials, metrics, 0.4, algorithm);
    ASSERT_EQ(rows.size(), metrics.size());
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(rows[i - 1].accuracy, rows[i].accuracy);
    for (const auto& row : rows) {
      const SimilarityGate gate{parse_metric(row.metric), 0.4};
      const auto set = algorithm == GatedAlgorithm::UserUser
                           ? diffuse_user_user(g, profiles, initials, gate)
                           : diffuse_user_content(g, profiles, rumor, initials, gate);
      auto direct = evaluate(set, profiles);
      direct.metric = row.metric;
      direct.threshold = 0.4;
      EXPECT_EQ(row, direct);
    }
  }
}

TEST(Sweep, SelfConsistentLabelsScorePerfectly) {
  std::mt19937_64 rng(83);
  const auto g = SocialGraph::build(oracle::random_edges(rng, 80, 0.05), oracle::node_ids(80));
  auto profiles = oracle::random_profiles(rng, g.nodes(), 8, 4);
  const std::vector<UserId> initials{1, 3};
  const auto truth = diffuse_user_user(g, profiles, initials, {MetricKind::Cosine, 0.5});
  for (auto& [id, p] : profiles) p.observed_diffuser = truth.contains(id);
  const std::vector<MetricKind> metrics{MetricKind::Cosine};
  const auto rows = metric_sweep(g, profiles, {}, initials, metrics, 0.5);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].accuracy, 1.0);
}

TEST(Sweep, IdenticalProfilesGiveIdenticalRows) {
  const auto g = SocialGraph::build({{1, 2}, {2, 3}, {3, 4}, {1, 5}});
  ProfileMap profiles;
  for (UserId u = 1; u <= 5; ++u) profiles[u] = {u, TopicSet{"a", "b"}, 0, u % 2 == 1};
  const std::vector<UserId> initials{1};
  const std::vector<MetricKind> metrics{MetricKind::Cosine, MetricKind::JaccardSet,
                                        MetricKind::Dice, MetricKind::Average};
  const auto rows = metric_sweep(g, profiles, {}, initials, metrics, 0.9);
  for (const auto& r : rows) {
    EXPECT_EQ(r.predicted_count, 5u);
    EXPECT_EQ(r.accuracy, rows.front().accuracy);
  }
  // Ties fall back to metric name order.
  EXPECT_EQ(rows.front().metric, "average");
  EXPECT_EQ(rows.back().metric, "jaccard");
}

TEST(Curve, MatchesStepCounts) {
  const auto g = SocialGraph::build({{1, 2}, {2, 3}});
  ProfileMap profiles;
  for (UserId u = 1; u <= 3; ++u) profiles[u] = {u, TopicSet{"a"}, u, false};
  SimulationConfig cfg;
  cfg.max_time = 4;
  cfg.trials = 1;
  cfg.initials = {1};
  const auto trace = run_simulation(cfg, g, profiles, {});
  const auto curve = diffusion_curve(trace);
  const std::vector<std::pair<std::size_t, std::size_t>> expected{
      {0, 1}, {1, 1}, {2, 2}, {3, 3}, {4, 3}};
  EXPECT_EQ(curve, expected);
}

TEST(SimilarityCache, RowsAgreeWithOracleAndRoundTrip) {
  std::mt19937_64 rng(84);
  const auto g = SocialGraph::build(oracle::random_edges(rng, 25, 0.1));
  const auto profiles = oracle::random_profiles(rng, g.nodes(), 8, 4);
  const auto rows = compute_similarity_rows(g, profiles);
  ASSERT_EQ(rows.size(), g.edge_count());
  for (const auto& r : rows) {
    const auto a = oracle::to_set(profiles.at(r.edge.from).topics);
    const auto b = oracle::to_set(profiles.at(r.edge.to).topics);
    EXPECT_NEAR(r.cosine, oracle::cosine(a, b), 1e-12);
    EXPECT_NEAR(r.jaccard, oracle::jaccard(a, b), 1e-12);
    EXPECT_NEAR(r.dice, oracle::dice(a, b), 1e-12);
  }
  const auto path = std::filesystem::temp_directory_path() / "rumorsim_sims_test.csv";
  write_similarity_cache(rows, path);
  const auto back = read_similarity_cache(path);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].edge, rows[i].edge);
    EXPECT_EQ(back[i].average, rows[i].average);
  }
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace rumorsim
