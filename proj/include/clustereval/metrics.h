#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clustereval/assignment.h"
#include "clustereval/channel.h"
#include "clustereval/dataset.h"
#include "clustereval/gp.h"
#include "clustereval/lexicon.h"
#include "clustereval/similarity.h"

namespace clustereval {

enum class Metric { kMaxAnswers, kMaxIncorrect };

std::string_view to_string(Metric metric);
std::string_view display_name(Metric metric);

struct MatchedPair {
  std::size_t rank = 0;  // 1-based position in the ranked list
  std::string answer;
  std::string cluster_id;
  std::int64_t reward = 0;
};

struct QuestionScore {
  std::string question_id;
  Metric metric = Metric::kMaxAnswers;
  int k = 1;
  std::int64_t raw_reward = 0;
  std::int64_t oracle_reward = 0;
  double normalized = 0.0;
  std::size_t answers_scored = 0;  // length of the ranked prefix that was scored
  std::vector<MatchedPair> pairs;
};

struct EvalConfig {
  SimilarityKind similarity = SimilarityKind::kExact;
  std::vector<int> max_answers_ks{1, 3, 5, 10};
  std::vector<int> max_incorrect_ks{1, 3, 5};
  std::size_t answer_list_cap = 20;
  LexiconOptions lexicon;
  WordnetOptions wordnet;
  GpOptions gp;

  // Throws std::invalid_argument on empty, non-positive or unsorted k lists
  // or a zero cap.
  void validate() const;
};

// Sum of the k largest cluster counts.
std::int64_t oracle_max_answers(const QuestionRecord& question, int k);
// Sum of all cluster counts.
std::int64_t oracle_max_incorrect(const QuestionRecord& question);

// Optimal assignment over the first k answers.
QuestionScore max_answers_at_k(std::span<const std::string> answers,
                               const QuestionRecord& question,
                               const ClusterMatcher& matcher, int k);

// Optimal assignment over the prefix ending at the k-th answer that matches
// no cluster.
QuestionScore max_incorrect_at_k(std::span<const std::string> answers,
                                 const QuestionRecord& question,
                                 const ClusterMatcher& matcher, int k);

// Same metrics from a reward matrix already built over the whole list.
// Repeats of an earlier answer (same normalized text) earn nothing.
QuestionScore score_max_answers(const RewardMatrix& matrix,
                                const QuestionRecord& question, int k);
QuestionScore score_max_incorrect(const RewardMatrix& matrix,
                                  const QuestionRecord& question, int k);

struct QuestionResult {
  std::string id;
  std::size_t answers_given = 0;
  bool truncated = false;
  std::size_t missing_embeddings = 0;
  std::size_t unmatched_answers = 0;
  std::vector<std::pair<std::string, double>> channel_parameters;
  std::vector<QuestionScore> scores;
};

struct SkippedQuestion {
  std::string id;
  std::string reason;
};

struct EvalDiagnostics {
  std::vector<std::string> unknown_prediction_ids;
  std::vector<SkippedQuestion> skipped;
  std::size_t truncated_lists = 0;
  std::size_t missing_embeddings = 0;
  std::size_t unmatched_answers = 0;
};

struct AggregateCell {
  Metric metric = Metric::kMaxAnswers;
  int k = 1;
  double mean = 0.0;
  std::size_t questions = 0;
};

struct EvalReport {
  SimilarityKind similarity = SimilarityKind::kExact;
  std::vector<QuestionResult> questions;  // sorted by id
  std::vector<AggregateCell> aggregate;   // empty when nothing was evaluated
  EvalDiagnostics diagnostics;
};

// Scores every question present in both inputs with every configured
// (metric, k). Output is independent of `jobs`.
EvalReport evaluate(const std::vector<QuestionRecord>& dataset,
                    const PredictionSet& predictions,
                    const SimilarityChannel& channel, const EvalConfig& config,
                    unsigned jobs = 1);

}  // namespace clustereval
