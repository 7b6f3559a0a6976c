#include "clustereval/metrics.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <variant>

#include "clustereval/text.h"

namespace clustereval {

namespace {

void check_k(int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
}

void validate_ks(const std::vector<int>& ks, const char* name) {
  if (ks.empty())
    throw std::invalid_argument(std::string(name) + " list is empty");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1)
      throw std::invalid_argument(std::string(name) + " values must be >= 1");
    if (i > 0 && ks[i] <= ks[i - 1])
      throw std::invalid_argument(std::string(name) +
                                  " values must be strictly increasing");
  }
}

// Zeroes the rows of answers that repeat an earlier answer.
void drop_repeats(RewardMatrix& m) {
  std::unordered_set<std::string> seen;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (seen.insert(text::normalize(m.answers[r])).second) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) m.rewards(r, c) = 0;
  }
}

bool row_matched(const RewardMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m.at(r, c) > 0) return true;
  return false;
}

QuestionScore score_prefix(const RewardMatrix& matrix,
                           const QuestionRecord& question, Metric metric,
                           int k, std::size_t length, std::int64_t oracle) {
  RewardMatrix scored = matrix.prefix(length);
  drop_repeats(scored);
  const Assignment assignment = optimal_assignment(scored);

  QuestionScore score;
  score.question_id = question.id;
  score.metric = metric;
  score.k = k;
  score.answers_scored = scored.rows();
  score.raw_reward = assignment.total_reward;
  score.oracle_reward = oracle;
  score.normalized = oracle > 0 ? static_cast<double>(assignment.total_reward) /
                                      static_cast<double>(oracle)
                                : 0.0;
  for (const auto& [r, c] : assignment.pairs)
    score.pairs.push_back(
        {r + 1, scored.answers[r], scored.cluster_ids[c], scored.at(r, c)});
  return score;
}

}  // namespace

std::string_view to_string(Metric metric) {
  return metric == Metric::kMaxAnswers ? "max_answers" : "max_incorrect";
}

std::string_view display_name(Metric metric) {
  return metric == Metric::kMaxAnswers ? "Max Answers" : "Max Incorrect";
}

void EvalConfig::validate() const {
  validate_ks(max_answers_ks, "max-answers");
  validate_ks(max_incorrect_ks, "max-incorrect");
  if (answer_list_cap == 0)
    throw std::invalid_argument("answer list cap must be positive");
}

std::int64_t oracle_max_answers(const QuestionRecord& question, int k) {
  check_k(k);
  std::vector<std::int64_t> counts;
  for (const auto& c : question.clusters) counts.push_back(c.count);
  std::sort(counts.begin(), counts.end(), std::greater<>());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < counts.size() && i < static_cast<std::size_t>(k);
       ++i)
    total += counts[i];
  return total;
}

std::int64_t oracle_max_incorrect(const QuestionRecord& question) {
  return question.total_count();
}

QuestionScore score_max_answers(const RewardMatrix& matrix,
                                const QuestionRecord& question, int k) {
  check_k(k);
  return score_prefix(matrix, question, Metric::kMaxAnswers, k,
                      static_cast<std::size_t>(k),
                      oracle_max_answers(question, k));
}

QuestionScore score_max_incorrect(const RewardMatrix& matrix,
                                  const QuestionRecord& question, int k) {
  check_k(k);
  std::size_t length = matrix.rows();
  int misses = 0;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    if (row_matched(matrix, r)) continue;
    if (++misses == k) {
      length = r + 1;
      break;
    }
  }
  return score_prefix(matrix, question, Metric::kMaxIncorrect, k, length,
                      oracle_max_incorrect(question));
}

QuestionScore max_answers_at_k(std::span<const std::string> answers,
                               const QuestionRecord& question,
                               const ClusterMatcher& matcher, int k) {
  check_k(k);
  const std::size_t n = std::min(answers.size(), static_cast<std::size_t>(k));
  return score_max_answers(
      build_reward_matrix(answers.first(n), question, matcher), question, k);
}

QuestionScore max_incorrect_at_k(std::span<const std::string> answers,
                                 const QuestionRecord& question,
                                 const ClusterMatcher& matcher, int k) {
  return score_max_incorrect(build_reward_matrix(answers, question, matcher),
                             question, k);
}

EvalReport evaluate(const std::vector<QuestionRecord>& dataset,
                    const PredictionSet& predictions,
                    const SimilarityChannel& channel, const EvalConfig& config,
                    unsigned jobs) {
  config.validate();
  if (channel.kind() != config.similarity)
    throw std::invalid_argument("similarity channel does not match config");

  EvalReport report;
  report.similarity = config.similarity;

  std::set<std::string> known;
  for (const auto& q : dataset) known.insert(q.id);
  for (const auto& [id, answers] : predictions.entries)
    if (!known.count(id)) report.diagnostics.unknown_prediction_ids.push_back(id);

  struct Work {
    const QuestionRecord* question;
    const std::vector<std::string>* answers;
  };
  std::vector<Work> work;
  for (const auto& q : dataset) {
    auto it = predictions.entries.find(q.id);
    if (it == predictions.entries.end()) {
      report.diagnostics.skipped.push_back({q.id, "no predictions"});
      continue;
    }
    work.push_back({&q, &it->second});
  }

  using Outcome = std::variant<QuestionResult, SkippedQuestion>;
  std::vector<std::optional<Outcome>> outcomes(work.size());

  auto run_one = [&](const Work& w) -> Outcome {
    const QuestionRecord& q = *w.question;
    QuestionResult result;
    result.id = q.id;
    result.answers_given = w.answers->size();
    std::span<const std::string> answers(*w.answers);
    if (answers.size() > config.answer_list_cap) {
      answers = answers.first(config.answer_list_cap);
      result.truncated = true;
    }
    std::unique_ptr<ClusterMatcher> matcher;
    try {
      matcher = channel.prepare(q);
    } catch (const ResourceError& e) {
      return SkippedQuestion{q.id, e.what()};
    }
    result.channel_parameters = matcher->parameters();
    const RewardMatrix matrix = build_reward_matrix(answers, q, *matcher);
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
      if (matrix.missing_embedding[r]) ++result.missing_embeddings;
      if (!row_matched(matrix, r)) ++result.unmatched_answers;
    }
    for (int k : config.max_answers_ks)
      result.scores.push_back(score_max_answers(matrix, q, k));
    for (int k : config.max_incorrect_ks)
      result.scores.push_back(score_max_incorrect(matrix, q, k));
    return result;
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(work.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < work.size(); ++i) outcomes[i] = run_one(work[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < workers; ++t) {
      threads.emplace_back([&] {
        for (std::size_t i = next++; i < work.size(); i = next++) {
          try {
            outcomes[i] = run_one(work[i]);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (auto& outcome : outcomes) {
    if (auto* r = std::get_if<QuestionResult>(&*outcome)) {
      report.diagnostics.truncated_lists += r->truncated ? 1 : 0;
      report.diagnostics.missing_embeddings += r->missing_embeddings;
      report.diagnostics.unmatched_answers += r->unmatched_answers;
      report.questions.push_back(std::move(*r));
    } else {
      report.diagnostics.skipped.push_back(
          std::move(std::get<SkippedQuestion>(*outcome)));
    }
  }
  std::sort(report.questions.begin(), report.questions.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(report.diagnostics.skipped.begin(),
            report.diagnostics.skipped.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  if (!report.questions.empty()) {
    const std::size_t cells = report.questions.front().scores.size();
    for (std::size_t cell = 0; cell < cells; ++cell) {
      AggregateCell agg;
      agg.metric = report.questions.front().scores[cell].metric;
      agg.k = report.questions.front().scores[cell].k;
      double sum = 0.0;
      for (const auto& q : report.questions) sum += q.scores[cell].normalized;
      agg.questions = report.questions.size();
      agg.mean = sum / static_cast<double>(agg.questions);
      report.aggregate.push_back(agg);
    }
  }
  return report;
}

}  // namespace clustereval
