#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "rumorsim/error.hpp"
#include "rumorsim/graph.hpp"

namespace rumorsim {
namespace {

namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rumorsim_graph_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p;
  }

  fs::path dir_;
};

using LoadEdges = TempDir;
using LoadUsers = TempDir;
using RoundTrip = TempDir;

TEST_F(LoadEdges, BasicGraph) {
  const auto load = load_edges(write("e.csv", "from_user_id,to_user_id\n1,2\n1,3\n"));
  EXPECT_EQ(load.graph.node_count(), 3u);
  EXPECT_EQ(load.graph.edge_count(), 2u);
  EXPECT_EQ(load.stats.rows, 2u);
}

TEST_F(LoadEdges, HeaderOnlyIsEmpty) {
  const auto load = load_edges(write("e.csv", "from_user_id,to_user_id\n"));
  EXPECT_EQ(load.graph.node_count(), 0u);
  EXPECT_EQ(load.graph.edge_count(), 0u);
}

TEST_F(LoadEdges, DuplicatesAndSelfLoops) {
  const auto load = load_edges(write("e.csv", "from_user_id,to_user_id\n1,2\n1,2\r\n3,3\n"));
  EXPECT_EQ(load.graph.node_count(), 2u);
  EXPECT_EQ(load.graph.edge_count(), 1u);
  EXPECT_EQ(load.stats.duplicates, 1u);
  EXPECT_EQ(load.stats.self_loops, 1u);
  EXPECT_FALSE(load.graph.contains(3));
}

TEST_F(LoadEdges, MalformedRowReportsLine) {
  const auto path = write("e.csv", "from_user_id,to_user_id\n1,2\n1,x\n");
  try {
    load_edges(path);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("to_user_id"), std::string::npos);
  }
}

TEST_F(LoadEdges, BadHeaderAndMissingFile) {
  EXPECT_THROW(load_edges(write("e.csv", "a,b\n1,2\n")), ParseError);
  EXPECT_THROW(load_edges(dir_ / "nope.csv"), IoError);
}

TEST_F(LoadUsers, QuotedTopics) {
  const auto profiles =
      load_users(write("u.csv", "user_id,topics,created_at,is_diffuser\n7,\"Internet , Technology\",3,1\n"));
  ASSERT_EQ(profiles.size(), 1u);
  const UserProfile& p = profiles.at(7);
  EXPECT_EQ(p.topics, (TopicSet{"internet", "technology"}));
  EXPECT_EQ(p.created_at, 3u);
  EXPECT_TRUE(p.observed_diffuser);
}

TEST_F(LoadUsers, DuplicateIdNamesTheId) {
  const auto path = write("u.csv",
                          "user_id,topics,created_at,is_diffuser\n7,a,0,1\n7,b,0,0\n");
  try {
    load_users(path);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("7"), std::string::npos);
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST_F(LoadUsers, BadFields) {
  EXPECT_THROW(load_users(write("a.csv", "user_id,topics,created_at,is_diffuser\n1,a,-1,1\n")),
               ParseError);
  EXPECT_THROW(load_users(write("b.csv", "user_id,topics,created_at,is_diffuser\n1,a,soon,1\n")),
               ParseError);
  EXPECT_THROW(load_users(write("c.csv", "user_id,topics,created_at,is_diffuser\n1,a,0,yes\n")),
               ParseError);
  const auto ok = load_users(write("d.csv", "user_id,topics,created_at,is_diffuser\n1,a,0,TRUE\n2,,0,false\n"));
  EXPECT_TRUE(ok.at(1).observed_diffuser);
  EXPECT_FALSE(ok.at(2).observed_diffuser);
  EXPECT_TRUE(ok.at(2).topics.empty());
}

TEST_F(LoadUsers, RumorFile) {
  const auto rumor = load_rumor(write("r.txt", "Internet\n\n  Technology \ninternet\n"));
  EXPECT_EQ(rumor.topics, (TopicSet{"internet", "technology"}));
}

TEST(OutNeighbors, SortedAndPure) {
  const auto g = SocialGraph::build({{1, 3}, {1, 2}});
  const auto n1 = out_neighbors(g, 1);
  EXPECT_EQ(std::vector<UserId>(n1.begin(), n1.end()), (std::vector<UserId>{2, 3}));
  EXPECT_TRUE(out_neighbors(g, 2).empty());
  EXPECT_THROW(out_neighbors(g, 99), NotFoundError);
  const auto again = out_neighbors(g, 1);
  EXPECT_TRUE(std::equal(n1.begin(), n1.end(), again.begin(), again.end()));
}

TEST(InNeighbors, Reverse) {
  const auto g = SocialGraph::build({{5, 1}, {3, 1}, {1, 9}});
  const auto in = g.in_neighbors(1);
  EXPECT_EQ(std::vector<UserId>(in.begin(), in.end()), (std::vector<UserId>{3, 5}));
}

TEST(Validate, Reports) {
  const auto g = SocialGraph::build({{1, 2}});
  ProfileMap profiles;
  profiles[1] = {1, TopicSet{"a"}, 0, false};
  profiles[2] = {2, TopicSet{"b"}, 0, false};
  EXPECT_TRUE(validate(g, profiles).clean());

  ProfileMap partial;
  partial[1] = {1, TopicSet{"a"}, 0, false};
  EXPECT_EQ(validate(g, partial).missing_profiles, (std::vector<UserId>{2}));

  ProfileMap empty_topics = profiles;
  empty_topics[2].topics = TopicSet{};
  empty_topics[5] = {5, TopicSet{"c"}, 0, false};
  const auto report = validate(g, empty_topics);
  EXPECT_EQ(report.empty_topics, (std::vector<UserId>{2}));
  EXPECT_EQ(report.isolated_nodes, (std::vector<UserId>{5}));
  EXPECT_EQ(empty_topics.size(), 3u);  // inputs untouched
}

TEST(WithProfileNodes, KeepsIsolatedUsers) {
  const auto g = SocialGraph::build({{1, 2}});
  ProfileMap profiles;
  profiles[42] = {42, TopicSet{"a"}, 0, false};
  const auto full = with_profile_nodes(g, profiles);
  EXPECT_EQ(full.node_count(), 3u);
  EXPECT_TRUE(full.contains(42));
  EXPECT_TRUE(full.out_neighbors(42).empty());
}

TEST_F(RoundTrip, RandomGraphsSurviveExportAndReload) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto edges = oracle::random_edges(rng, 30, 0.1, 1000, 7919);
    edges.push_back(edges.empty() ? Edge{1, 2} : edges.front());  // a duplicate row
    BuildStats stats;
    const auto g = SocialGraph::build(edges, {}, &stats);
    EXPECT_LE(g.edge_count(), stats.rows);
    EXPECT_LE(g.node_count(), 2 * g.edge_count());
    const fs::path p = dir_ / "g.csv";
    write_edges(g, p);
    EXPECT_EQ(load_edges(p).graph, g);
  }
}

TEST(Build, AdjacencyIsAscendingForRandomGraphs) {
  std::mt19937_64 rng(17);
  const auto edges = oracle::random_edges(rng, 60, 0.08, 5, 13);
  const auto g = SocialGraph::build(edges);
  for (UserId u : g.nodes()) {
    const auto out = g.out_neighbors(u);
    EXPECT_TRUE(std::is_sorted(out.begin(), out.end()));
    for (UserId v : out) EXPECT_TRUE(g.has_edge(u, v));
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < g.node_count(); ++i) total += g.out_indices(i).size();
  EXPECT_EQ(total, g.edge_count());
}

}  // namespace
}  // namespace rumorsim
