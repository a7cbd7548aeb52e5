#include <benchmark/benchmark.h>

#include <random>

#include "rumorsim/diffusion_models.hpp"
#include "rumorsim/gated_diffusion.hpp"
#include "rumorsim/rng.hpp"
#include "rumorsim/similarity.hpp"

namespace {

using namespace rumorsim;

TopicSet random_topics(std::mt19937_64& rng, std::size_t vocab, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(0, vocab - 1);
  TopicSet t;
  for (std::size_t i = 0; i < n; ++i) t.insert("topic" + std::to_string(pick(rng)));
  return t;
}

SocialGraph random_graph(std::size_t n, std::size_t out_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<UserId> pick(1, n);
  std::vector<Edge> edges;
  for (UserId u = 1; u <= n; ++u) {
    for (std::size_t k = 0; k < out_degree; ++k) {
      const UserId v = pick(rng);
      if (v != u) edges.push_back({u, v});
    }
  }
  return SocialGraph::build(edges);
}

void BM_Score(benchmark::State& state, MetricKind metric) {
  std::mt19937_64 rng(1);
  std::vector<TopicSet> sets;
  for (int i = 0; i < 256; ++i) sets.push_back(random_topics(rng, 30, 12));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(score(metric, sets[i % 256], sets[(i * 7 + 3) % 256]));
    ++i;
  }
}
BENCHMARK_CAPTURE(BM_Score, cosine, MetricKind::Cosine);
BENCHMARK_CAPTURE(BM_Score, jaccard, MetricKind::JaccardSet);
BENCHMARK_CAPTURE(BM_Score, dice, MetricKind::Dice);
BENCHMARK_CAPTURE(BM_Score, levenshtein, MetricKind::Levenshtein);
BENCHMARK_CAPTURE(BM_Score, average, MetricKind::Average);

void BM_DiffuseUserUser(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SocialGraph g = random_graph(n, 8, 2);
  std::mt19937_64 rng(3);
  ProfileMap profiles;
  for (UserId u : g.nodes()) profiles[u] = {u, random_topics(rng, 20, 5), 0, false};
  const std::vector<UserId> initials{g.nodes().front()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        diffuse_user_user(g, profiles, initials, {MetricKind::Cosine, 0.3}).size());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()));
}
BENCHMARK(BM_DiffuseUserUser)->Arg(1000)->Arg(10000);

void BM_SirStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SocialGraph g = random_graph(n, 8, 4);
  SirStates states(g.node_count(), SirState::Susceptible);
  for (std::size_t i = 0; i < states.size(); i += 10) states[i] = SirState::Infected;
  RngStream rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sir_step(g, states, {0.1, 0.05}, rng));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.node_count()));
}
BENCHMARK(BM_SirStep)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
