#include "clustereval/metrics.h"

#include <random>

#include "gtest/gtest.h"
#include "test_support.h"

namespace clustereval {
namespace {

using Answers = std::vector<std::string>;

QuestionRecord wake_up() {
  return testing_support::load_dataset("wake_up.jsonl").at(0);
}

TEST(Oracles, MaxAnswersSumsLargestCounts) {
  const auto q = wake_up();
  EXPECT_EQ(oracle_max_answers(q, 2), 73);
  EXPECT_EQ(oracle_max_answers(q, 3), 83);
  EXPECT_EQ(oracle_max_answers(q, 10), 88);
  QuestionRecord single;
  single.clusters = {{"c", 7, {"x"}}};
  EXPECT_EQ(oracle_max_answers(single, 1), 7);
  EXPECT_EQ(oracle_max_incorrect(q), 88);
  EXPECT_THROW(oracle_max_answers(q, 0), std::invalid_argument);
}

class WakeUpMetrics : public ::testing::Test {
 protected:
  QuestionRecord q_ = wake_up();
  std::unique_ptr<SimilarityChannel> channel_ = make_exact_channel();
  std::unique_ptr<ClusterMatcher> matcher_ = channel_->prepare(q_);
};

TEST_F(WakeUpMetrics, MaxAnswers) {
  const Answers answers{"grab a shower", "eggs and coffee"};
  const auto k2 = max_answers_at_k(answers, q_, *matcher_, 2);
  EXPECT_EQ(k2.raw_reward, 73);
  EXPECT_EQ(k2.oracle_reward, 73);
  EXPECT_EQ(k2.normalized, 1.0);
  ASSERT_EQ(k2.pairs.size(), 2u);
  EXPECT_EQ(k2.pairs[0].rank, 1u);
  EXPECT_EQ(k2.pairs[0].cluster_id, "shower");
  EXPECT_EQ(k2.pairs[1].cluster_id, "breakfast");

  const auto k3 = max_answers_at_k(answers, q_, *matcher_, 3);
  EXPECT_EQ(k3.raw_reward, 73);
  EXPECT_EQ(k3.oracle_reward, 83);
  EXPECT_DOUBLE_EQ(k3.normalized, 73.0 / 83.0);
  EXPECT_LT(k3.normalized, 1.0);
}

TEST_F(WakeUpMetrics, RepeatedAnswerCreditedOnce) {
  const Answers answers(5, "shower");
  const auto s = max_answers_at_k(answers, q_, *matcher_, 5);
  EXPECT_EQ(s.raw_reward, 43);
  EXPECT_DOUBLE_EQ(s.normalized, 43.0 / 88.0);
}

TEST_F(WakeUpMetrics, MaxIncorrectStopsAtKthMiss) {
  const Answers answers{"shower", "check phone", "breakfast", "brush teeth"};
  const auto k1 = max_incorrect_at_k(answers, q_, *matcher_, 1);
  EXPECT_EQ(k1.raw_reward, 43);
  EXPECT_EQ(k1.oracle_reward, 88);
  EXPECT_DOUBLE_EQ(k1.normalized, 43.0 / 88.0);
  EXPECT_EQ(k1.answers_scored, 2u);

  const auto k2 = max_incorrect_at_k(answers, q_, *matcher_, 2);
  EXPECT_EQ(k2.raw_reward, 73);
  EXPECT_EQ(k2.answers_scored, 4u);

  const Answers all_hits{"keys", "shower", "goodbye"};
  const auto full = max_incorrect_at_k(all_hits, q_, *matcher_, 1);
  EXPECT_EQ(full.answers_scored, 3u);
  EXPECT_EQ(full.raw_reward, 58);

  const Answers first_miss{"check phone", "shower"};
  EXPECT_EQ(max_incorrect_at_k(first_miss, q_, *matcher_, 1).raw_reward, 0);
}

TEST_F(WakeUpMetrics, RepeatOfCreditedClusterUsesNoBudget) {
  // The second "shower" matches a cluster, so it is not a miss.
  const Answers answers{"shower", "take a shower", "keys", "check phone", "goodbye"};
  const auto s = max_incorrect_at_k(answers, q_, *matcher_, 1);
  EXPECT_EQ(s.answers_scored, 4u);
  EXPECT_EQ(s.raw_reward, 53);
}

TEST(EvalConfig, Validation) {
  EvalConfig config;
  EXPECT_NO_THROW(config.validate());
  config.max_answers_ks = {3, 1};
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config.max_answers_ks = {};
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config.max_answers_ks = {1};
  config.max_incorrect_ks = {0};
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config.max_incorrect_ks = {1};
  config.answer_list_cap = 0;
  EXPECT_THROW(config.validate(), std::invalid_argument);
}

TEST(Evaluate, OracleSaturatesEveryCell) {
  const auto dataset = testing_support::load_dataset("wake_up.jsonl");
  PredictionSet preds;
  preds.entries["wake_up"] = testing_support::oracle_prediction(dataset[0]);
  const auto channel = make_exact_channel();
  const auto report = evaluate(dataset, preds, *channel, EvalConfig{});
  ASSERT_EQ(report.questions.size(), 1u);
  ASSERT_EQ(report.aggregate.size(), 7u);
  for (const auto& cell : report.aggregate) EXPECT_EQ(cell.mean, 1.0);
}

TEST(Evaluate, EmptyPredictions) {
  const auto dataset = testing_support::load_dataset("suite.jsonl");
  const auto channel = make_exact_channel();
  const auto report = evaluate(dataset, PredictionSet{}, *channel, EvalConfig{});
  EXPECT_TRUE(report.questions.empty());
  EXPECT_TRUE(report.aggregate.empty());
  EXPECT_EQ(report.diagnostics.skipped.size(), dataset.size());
}

TEST(Evaluate, MacroAverage) {
  QuestionRecord a;
  a.id = "a";
  a.clusters = {{"x", 10, {"x"}}};
  QuestionRecord b;
  b.id = "b";
  b.clusters = {{"y", 5, {"y"}}, {"z", 5, {"z"}}};
  PredictionSet preds;
  preds.entries["a"] = {"x"};
  preds.entries["b"] = {"y", "w"};
  EvalConfig config;
  config.max_answers_ks = {1, 2};
  config.max_incorrect_ks = {1};
  const auto channel = make_exact_channel();
  const auto report = evaluate({b, a}, preds, *channel, config);
  ASSERT_EQ(report.questions.size(), 2u);
  EXPECT_EQ(report.questions[0].id, "a");
  EXPECT_EQ(report.aggregate[0].metric, Metric::kMaxAnswers);
  EXPECT_EQ(report.aggregate[0].k, 1);
  EXPECT_DOUBLE_EQ(report.aggregate[0].mean, 1.0);   // 1.0 and 5/5
  EXPECT_DOUBLE_EQ(report.aggregate[1].mean, 0.75);  // 1.0 and 5/10
  EXPECT_DOUBLE_EQ(report.aggregate[2].mean, 0.75);
}

TEST(Evaluate, DiagnosticsOnFixtureSuite) {
  const auto dataset = testing_support::load_dataset("suite.jsonl");
  const auto preds = testing_support::load_predictions("suite_predictions.jsonl");
  EvalConfig config;
  config.answer_list_cap = 5;
  const auto channel = make_exact_channel();
  const auto report = evaluate(dataset, preds, *channel, config);
  EXPECT_EQ(report.diagnostics.unknown_prediction_ids,
            std::vector<std::string>{"not_in_dataset"});
  EXPECT_TRUE(report.diagnostics.skipped.empty());
  EXPECT_EQ(report.diagnostics.truncated_lists, 2u);
  EXPECT_EQ(report.questions.size(), 4u);
  EXPECT_EQ(report.questions[0].id, "chew");
}

TEST(Evaluate, VectorChannelSkipsQuestionsWithoutReferenceVectors) {
  const auto dataset = testing_support::load_dataset("suite.jsonl");
  const auto preds = testing_support::load_predictions("suite_predictions.jsonl");
  EmbeddingStore store(2);
  store.add("chew", "gum", {0, 0});
  EvalConfig config;
  config.similarity = SimilarityKind::kVector;
  const auto channel = make_vector_channel(store, config.gp);
  const auto report = evaluate(dataset, preds, *channel, config);
  EXPECT_TRUE(report.questions.empty());
  EXPECT_EQ(report.diagnostics.skipped.size(), 4u);
}

TEST(Evaluate, ParallelRunsMatchSerial) {
  std::mt19937_64 rng(55);
  std::vector<QuestionRecord> dataset;
  PredictionSet preds;
  for (int i = 0; i < 40; ++i) {
    dataset.push_back(testing_support::random_question(rng, "q" + std::to_string(i)));
    auto answers = testing_support::oracle_prediction(dataset.back());
    std::shuffle(answers.begin(), answers.end(), rng);
    answers.insert(answers.begin() + answers.size() / 2, "miss");
    preds.entries[dataset.back().id] = answers;
  }
  const auto channel = make_exact_channel();
  const auto serial = evaluate(dataset, preds, *channel, EvalConfig{}, 1);
  const auto parallel = evaluate(dataset, preds, *channel, EvalConfig{}, 8);
  ASSERT_EQ(serial.questions.size(), parallel.questions.size());
  for (std::size_t i = 0; i < serial.questions.size(); ++i) {
    EXPECT_EQ(serial.questions[i].id, parallel.questions[i].id);
    for (std::size_t c = 0; c < serial.questions[i].scores.size(); ++c)
      EXPECT_EQ(serial.questions[i].scores[c].normalized,
                parallel.questions[i].scores[c].normalized);
  }
  for (std::size_t c = 0; c < serial.aggregate.size(); ++c)
    EXPECT_EQ(serial.aggregate[c].mean, parallel.aggregate[c].mean);
}

// Random ranked list mixing members of random clusters and misses.
Answers random_list(std::mt19937_64& rng, const QuestionRecord& q) {
  std::uniform_int_distribution<int> len(1, 12);
  std::bernoulli_distribution miss(0.3);
  std::uniform_int_distribution<std::size_t> cluster(0, q.clusters.size() - 1);
  Answers answers;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    if (miss(rng)) {
      answers.push_back("miss " + std::to_string(i));
      continue;
    }
    const auto& c = q.clusters[cluster(rng)];
    std::uniform_int_distribution<std::size_t> member(0, c.answers.size() - 1);
    answers.push_back(c.answers[member(rng)]);
  }
  return answers;
}

TEST(MetricProperties, RawAndOracleNonDecreasingInK) {
  std::mt19937_64 rng(56);
  const auto channel = make_exact_channel();
  for (int trial = 0; trial < 200; ++trial) {
    const auto q = testing_support::random_question(rng, "q");
    const auto matcher = channel->prepare(q);
    const auto answers = random_list(rng, q);
    for (int k = 1; k < 12; ++k) {
      const auto a = max_answers_at_k(answers, q, *matcher, k);
      const auto b = max_answers_at_k(answers, q, *matcher, k + 1);
      EXPECT_LE(a.raw_reward, b.raw_reward);
      EXPECT_LE(a.oracle_reward, b.oracle_reward);
      const auto c = max_incorrect_at_k(answers, q, *matcher, k);
      const auto d = max_incorrect_at_k(answers, q, *matcher, k + 1);
      EXPECT_LE(c.raw_reward, d.raw_reward);
    }
  }
}

TEST(MetricProperties, PrependingAMissNeverHelps) {
  std::mt19937_64 rng(57);
  const auto channel = make_exact_channel();
  for (int trial = 0; trial < 200; ++trial) {
    const auto q = testing_support::random_question(rng, "q");
    const auto matcher = channel->prepare(q);
    const auto answers = random_list(rng, q);
    Answers prefixed{"definitely not an answer"};
    prefixed.insert(prefixed.end(), answers.begin(), answers.end());
    for (int k = 1; k <= 10; ++k) {
      EXPECT_LE(max_answers_at_k(prefixed, q, *matcher, k).normalized,
                max_answers_at_k(answers, q, *matcher, k).normalized);
      EXPECT_LE(max_incorrect_at_k(prefixed, q, *matcher, k).normalized,
                max_incorrect_at_k(answers, q, *matcher, k).normalized);
    }
  }
}

TEST(MetricProperties, DuplicatesNeverIncreaseScores) {
  std::mt19937_64 rng(58);
  const auto lex = testing_support::random_lexicon(rng);
  const auto exact = make_exact_channel();
  const auto wordnet = make_wordnet_channel(lex);
  for (int trial = 0; trial < 200; ++trial) {
    const auto q = testing_support::random_question(rng, "q");
    for (const auto* channel : {exact.get(), wordnet.get()}) {
      const auto matcher = channel->prepare(q);
      const auto answers = random_list(rng, q);
      // Repeat one answer somewhere after its first occurrence.
      std::uniform_int_distribution<std::size_t> pick(0, answers.size() - 1);
      const auto at = pick(rng);
      std::uniform_int_distribution<std::size_t> after(at + 1, answers.size());
      Answers duplicated = answers;
      duplicated.insert(duplicated.begin() + after(rng), answers[at]);
      for (int k = 1; k <= 10; ++k) {
        EXPECT_LE(max_answers_at_k(duplicated, q, *matcher, k).normalized,
                  max_answers_at_k(answers, q, *matcher, k).normalized);
        EXPECT_LE(max_incorrect_at_k(duplicated, q, *matcher, k).normalized,
                  max_incorrect_at_k(answers, q, *matcher, k).normalized);
      }
    }
  }
}

}  // namespace
}  // namespace clustereval
