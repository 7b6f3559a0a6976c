#include "clustereval/agreement.h"

#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "oracles.h"
#include "test_support.h"

namespace clustereval {
namespace {

Clustering make(std::map<std::string, std::string> labels) {
  return Clustering{std::move(labels)};
}

Clustering random_clustering(std::mt19937_64& rng, int items, int max_labels) {
  std::uniform_int_distribution<int> label(0, max_labels - 1);
  Clustering c;
  for (int i = 0; i < items; ++i)
    c.labels["item" + std::to_string(i)] = "L" + std::to_string(label(rng));
  return c;
}

TEST(Blanc, WorkedExample) {
  const auto gold = make({{"a", "x"}, {"b", "x"}, {"c", "y"}, {"d", "y"}});
  const auto response = make({{"a", "k"}, {"b", "k"}, {"c", "k"}, {"d", "k"}});
  const auto r = blanc(gold, response);
  ASSERT_TRUE(r.score.has_value());
  EXPECT_NEAR(*r.score, 0.25, 1e-12);
  EXPECT_NEAR(r.coref_f, 0.5, 1e-12);
  EXPECT_EQ(r.noncoref_f, 0.0);
  EXPECT_EQ(r.links.coref_gold, 2u);
  EXPECT_EQ(r.links.coref_response, 6u);
  EXPECT_EQ(r.links.coref_common, 2u);
  EXPECT_EQ(r.links.noncoref_gold, 4u);
  EXPECT_EQ(r.links.noncoref_response, 0u);
  EXPECT_EQ(r.common_items, 4u);
}

TEST(Blanc, IdenticalClusterings) {
  const auto c = make({{"a", "1"}, {"b", "1"}, {"c", "2"}, {"d", "3"}, {"e", "3"}, {"f", "3"}});
  EXPECT_EQ(*blanc(c, c).score, 1.0);
}

TEST(Blanc, AllSingletonsUsesNonCorefOnly) {
  const auto c = make({{"a", "1"}, {"b", "2"}, {"c", "3"}});
  const auto d = make({{"a", "x"}, {"b", "y"}, {"c", "z"}});
  EXPECT_EQ(*blanc(c, d).score, 1.0);
}

TEST(Blanc, OneClusterEachUsesCorefOnly) {
  const auto c = make({{"a", "1"}, {"b", "1"}, {"c", "1"}});
  EXPECT_EQ(*blanc(c, c).score, 1.0);
}

TEST(Blanc, InvalidIsAnOrdinaryLabel) {
  const auto gold = make({{"a", kInvalidLabel}, {"b", kInvalidLabel}, {"c", "x"}});
  const auto response = make({{"a", kInvalidLabel}, {"b", "y"}, {"c", "x"}});
  EXPECT_DOUBLE_EQ(*blanc(gold, response).score, *oracle::blanc(gold, response));
  EXPECT_LT(*blanc(gold, response).score, 1.0);
}

TEST(Blanc, ExcludesOneSidedItems) {
  const auto gold = make({{"a", "1"}, {"b", "1"}, {"g", "2"}});
  const auto response = make({{"a", "x"}, {"b", "x"}, {"r", "y"}});
  const auto r = blanc(gold, response);
  EXPECT_EQ(r.common_items, 2u);
  EXPECT_EQ(r.only_in_gold, std::vector<std::string>{"g"});
  EXPECT_EQ(r.only_in_response, std::vector<std::string>{"r"});
  EXPECT_EQ(*r.score, 1.0);
}

TEST(Blanc, UndefinedBelowTwoCommonItems) {
  EXPECT_FALSE(blanc(make({{"a", "1"}}), make({{"a", "1"}})).score.has_value());
  EXPECT_FALSE(blanc(make({{"a", "1"}, {"b", "1"}}), make({{"c", "1"}, {"d", "2"}}))
                   .score.has_value());
}

TEST(ParseClustering, ReadsItemsObject) {
  std::istringstream in(R"({"items": {"shower": "c1", "bath": "c1", "xyz": "INVALID"}})");
  const auto c = parse_clustering(in);
  EXPECT_EQ(c.labels.size(), 3u);
  EXPECT_EQ(c.labels.at("xyz"), kInvalidLabel);
  std::istringstream bad(R"({"items": ["shower"]})");
  EXPECT_THROW(parse_clustering(bad), std::runtime_error);
  std::istringstream garbage("{");
  EXPECT_THROW(parse_clustering(garbage), std::runtime_error);
}

TEST(BlancProperties, MatchesPairOracleOnEightItems) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_clustering(rng, 8, 1 + trial % 8);
    const auto b = random_clustering(rng, 8, 1 + (trial / 8) % 8);
    EXPECT_NEAR(*blanc(a, b).score, *oracle::blanc(a, b), 1e-12);
  }
}

TEST(BlancProperties, SymmetricReflexiveAndLabelBlind) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_clustering(rng, 10, 4);
    const auto b = random_clustering(rng, 10, 4);
    EXPECT_EQ(*blanc(a, a).score, 1.0);
    EXPECT_NEAR(*blanc(a, b).score, *blanc(b, a).score, 1e-12);
    Clustering renamed;
    for (const auto& [item, label] : b.labels) renamed.labels[item] = "renamed_" + label;
    EXPECT_EQ(*blanc(a, renamed).score, *blanc(a, b).score);
  }
}

}  // namespace
}  // namespace clustereval
