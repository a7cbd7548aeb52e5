#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rumorsim/error.hpp"
#include "rumorsim/similarity.hpp"

namespace rumorsim {
namespace {

const TopicSet kAbc{"a", "b", "c"};
const TopicSet kBcd{"b", "c", "d"};

TEST(Tokenize, SplitsTrimsLowercasesAndDeduplicates) {
  const TopicSet t = tokenize_topics(" , Business & Finance , Small business ,Internet");
  EXPECT_EQ(t, (TopicSet{"business & finance", "small business", "internet"}));
  EXPECT_EQ(t.size(), 3u);
}

TEST(Tokenize, EmptyAndDuplicates) {
  EXPECT_TRUE(tokenize_topics("").empty());
  EXPECT_TRUE(tokenize_topics(" , ,").empty());
  const TopicSet t = tokenize_topics("A, a , A");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.labels().front(), "a");
}

TEST(Tokenize, CanonicalStringIsSorted) {
  EXPECT_EQ(tokenize_topics("zeta, Alpha, mid").canonical(), "alpha, mid, zeta");
}

TEST(Cosine, IdentityDisjointAndOverlap) {
  EXPECT_EQ(cosine(kAbc, kAbc), 1.0);
  EXPECT_EQ(cosine(kAbc, TopicSet{"x", "y"}), 0.0);
  // dot = 2, |a| = |b| = sqrt(3)
  EXPECT_NEAR(cosine(kAbc, kBcd), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(cosine(TopicSet{}, kAbc), 0.0);
}

TEST(Cosine, VectorFormMatchesSetForm) {
  const auto [va, vb] = binary_vectors(kAbc, kBcd);
  EXPECT_EQ(va.vocabulary, (std::vector<std::string>{"a", "b", "c", "d"}));
  EXPECT_EQ(va.weights, (std::vector<double>{1, 1, 1, 0}));
  EXPECT_EQ(vb.weights, (std::vector<double>{0, 1, 1, 1}));
  EXPECT_NEAR(cosine(std::span<const double>(va.weights), std::span<const double>(vb.weights)),
              2.0 / 3.0, 1e-15);
}

TEST(Pearson, PerfectAndInverse) {
  const std::vector<double> up{1, 2, 3};
  const std::vector<double> down{3, 2, 1};
  EXPECT_NEAR(pearson(up, up), 1.0, 1e-15);
  // centered: (-1,0,1) vs (1,0,-1) -> -2 / 2
  EXPECT_NEAR(pearson(up, down), -1.0, 1e-15);
}

TEST(Pearson, ZeroVarianceIsAnError) {
  const std::vector<double> flat{1, 1, 1};
  const std::vector<double> up{1, 2, 3};
  EXPECT_THROW(pearson(flat, up), UndefinedCorrelation);
  EXPECT_THROW(pearson(up, flat), UndefinedCorrelation);
  const std::vector<double> one{1};
  EXPECT_THROW(pearson(one, one), UndefinedCorrelation);
}

TEST(Pearson, MismatchedVocabulary) {
  TermVector a{{"x", "y"}, {1, 0}};
  TermVector b{{"x", "z"}, {0, 1}};
  EXPECT_THROW(pearson(a, b), ConfigError);
}

TEST(Pearson, ScoreOnFullOverlapPropagatesUndefined) {
  // Both binary vectors are all ones over the union.
  EXPECT_THROW(score(MetricKind::Pearson, kAbc, kAbc), UndefinedCorrelation);
  EXPECT_NEAR(score(MetricKind::Pearson, kAbc, kBcd), -1.0 / 3.0, 1e-15);
}

TEST(Jaccard, SetAndVectorVariants) {
  EXPECT_EQ(jaccard(kAbc, kAbc), 1.0);
  EXPECT_EQ(jaccard(kAbc, kBcd), 0.5);
  EXPECT_EQ(jaccard(kAbc, kBcd, JaccardVariant::Vector), 0.5);
  EXPECT_EQ(jaccard(TopicSet{}, TopicSet{}), 0.0);
  EXPECT_EQ(jaccard(TopicSet{}, TopicSet{}, JaccardVariant::Vector), 0.0);
}

TEST(Jaccard, VariantsAgreeOnRandomBinaryPairs) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const TopicSet a = oracle::random_topics(rng, 30, 12);
    const TopicSet b = oracle::random_topics(rng, 30, 12);
    EXPECT_NEAR(jaccard(a, b, JaccardVariant::Set), jaccard(a, b, JaccardVariant::Vector), 1e-12);
  }
}

TEST(Dice, ValuesAndIdentityWithJaccard) {
  EXPECT_EQ(dice(kAbc, kAbc), 1.0);
  EXPECT_NEAR(dice(kAbc, kBcd), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(dice(TopicSet{}, TopicSet{}), 0.0);
  const double j = jaccard(kAbc, kBcd);
  EXPECT_NEAR(dice(kAbc, kBcd), 2 * j / (1 + j), 1e-15);
}

TEST(Levenshtein, Examples) {
  EXPECT_EQ(levenshtein("abc", "abc").distance, 0u);
  EXPECT_EQ(levenshtein("abc", "abc").similarity, 1.0);
  EXPECT_EQ(levenshtein("abc", "abcd").distance, 1u);
  EXPECT_EQ(levenshtein("abc", "abcd").similarity, 0.75);
  EXPECT_EQ(levenshtein("kitten", "sitting").distance, 3u);
  EXPECT_EQ(levenshtein("", "").similarity, 1.0);
  EXPECT_EQ(levenshtein("", "abc").distance, 3u);
  EXPECT_EQ(levenshtein("", "abc").similarity, 0.0);
}

TEST(Levenshtein, MetricAxiomsAgainstOracle) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const std::string s = oracle::random_string(rng, 20);
    const std::string t = oracle::random_string(rng, 20);
    const std::string u = oracle::random_string(rng, 20);
    const auto dst = levenshtein(s, t).distance;
    EXPECT_EQ(levenshtein(s, s).distance, 0u);
    EXPECT_EQ(dst, levenshtein(t, s).distance);
    EXPECT_LE(levenshtein(s, u).distance, dst + levenshtein(t, u).distance);
    EXPECT_EQ(dst, oracle::edit_distance(s, t));
  }
}

TEST(Score, DispatchAndConventions) {
  EXPECT_EQ(score(MetricKind::Cosine, kAbc, kAbc), 1.0);
  EXPECT_EQ(score(MetricKind::JaccardSet, TopicSet{}, kAbc), 0.0);
  EXPECT_EQ(score(MetricKind::Levenshtein, kAbc, kAbc), 1.0);
  // canonical "a, b, c" vs "b, c, d": delete "a, " and append ", d" -> 6 edits over 7
  EXPECT_NEAR(score(MetricKind::Levenshtein, kAbc, kBcd),
              1.0 - static_cast<double>(oracle::edit_distance("a, b, c", "b, c, d")) / 7.0, 1e-15);
  const double avg = (2.0 / 3.0 + 0.5 + 2.0 / 3.0) / 3.0;
  EXPECT_NEAR(score(MetricKind::Average, kAbc, kBcd), avg, 1e-15);
}

TEST(Score, RangeAndSymmetryOverRandomInputs) {
  std::mt19937_64 rng(99);
  const MetricKind metrics[] = {MetricKind::Cosine, MetricKind::JaccardSet,
                                MetricKind::JaccardVector, MetricKind::Dice,
                                MetricKind::Levenshtein, MetricKind::Average};
  for (int i = 0; i < 10000; ++i) {
    const TopicSet a = oracle::random_topics(rng, 30, 12);
    const TopicSet b = oracle::random_topics(rng, 30, 12);
    for (MetricKind m : metrics) {
      const double ab = score(m, a, b);
      ASSERT_GE(ab, 0.0) << metric_name(m);
      ASSERT_LE(ab, 1.0) << metric_name(m);
      ASSERT_EQ(ab, score(m, b, a)) << metric_name(m);
    }
    try {
      const double p = score(MetricKind::Pearson, a, b);
      ASSERT_GE(p, -1.0);
      ASSERT_LE(p, 1.0);
      ASSERT_EQ(p, score(MetricKind::Pearson, b, a));
    } catch (const UndefinedCorrelation&) {
    }
  }
}

TEST(Metric, NamesRoundTrip) {
  for (auto m : {MetricKind::Cosine, MetricKind::Pearson, MetricKind::JaccardSet,
                 MetricKind::JaccardVector, MetricKind::Dice, MetricKind::Levenshtein,
                 MetricKind::Average}) {
    EXPECT_EQ(parse_metric(metric_name(m)), m);
  }
  EXPECT_EQ(parse_metric("Jaccard_Set"), MetricKind::JaccardSet);
  EXPECT_THROW(parse_metric("tfidf"), ConfigError);
}

}  // namespace
}  // namespace rumorsim
