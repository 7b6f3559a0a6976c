#include "clustereval/assignment.h"

#include <algorithm>

namespace clustereval {

namespace {

// Optimum over rows [first_row, rows) and the columns not yet taken.
std::int64_t sub_optimum(const WeightMatrix<std::int64_t>& m,
                         std::size_t first_row,
                         const std::vector<bool>& col_taken) {
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!col_taken[c]) cols.push_back(c);
  WeightMatrix<std::int64_t> sub(m.rows() - first_row, cols.size());
  for (std::size_t r = first_row; r < m.rows(); ++r)
    for (std::size_t k = 0; k < cols.size(); ++k)
      sub(r - first_row, k) = m(r, cols[k]);
  return max_weight_assignment(sub);
}

}  // namespace

RewardMatrix RewardMatrix::prefix(std::size_t n) const {
  n = std::min(n, rows());
  RewardMatrix out;
  out.answers.assign(answers.begin(), answers.begin() + n);
  out.cluster_ids = cluster_ids;
  out.missing_embedding.assign(missing_embedding.begin(),
                               missing_embedding.begin() + n);
  out.rewards = WeightMatrix<std::int64_t>(n, cols());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < cols(); ++c) out.rewards(r, c) = rewards(r, c);
  return out;
}

RewardMatrix build_reward_matrix(std::span<const std::string> answers,
                                 const QuestionRecord& question,
                                 const ClusterMatcher& matcher) {
  RewardMatrix m;
  m.answers.assign(answers.begin(), answers.end());
  for (const auto& c : question.clusters) m.cluster_ids.push_back(c.id);
  m.rewards = WeightMatrix<std::int64_t>(answers.size(), question.clusters.size());
  m.missing_embedding.assign(answers.size(), false);
  for (std::size_t r = 0; r < answers.size(); ++r) {
    const MatchRow row = matcher.match(answers[r]);
    m.missing_embedding[r] = row.missing_embedding;
    for (std::size_t c = 0; c < question.clusters.size(); ++c)
      if (row.hits[c]) m.rewards(r, c) = question.clusters[c].count;
  }
  return m;
}

Assignment optimal_assignment(const WeightMatrix<std::int64_t>& rewards) {
  Assignment result;
  std::vector<bool> col_taken(rewards.cols(), false);
  std::int64_t remaining = max_weight_assignment(rewards);
  result.total_reward = remaining;

  // Fix rows in order, each to the smallest column that still admits an
  // optimal completion.
  for (std::size_t r = 0; r < rewards.rows() && remaining > 0; ++r) {
    for (std::size_t c = 0; c < rewards.cols(); ++c) {
      const std::int64_t w = rewards(r, c);
      if (col_taken[c] || w <= 0 || w > remaining) continue;
      col_taken[c] = true;
      if (w + sub_optimum(rewards, r + 1, col_taken) == remaining) {
        result.pairs.emplace_back(r, c);
        remaining -= w;
        break;
      }
      col_taken[c] = false;
    }
  }
  return result;
}

Assignment optimal_assignment(const RewardMatrix& matrix) {
  return optimal_assignment(matrix.rewards);
}

}  // namespace clustereval
