#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clustereval/channel.h"
#include "clustereval/dataset.h"
#include "clustereval/hungarian.h"

namespace clustereval {

// Answers (rows, rank order) x clusters (columns, file order). An entry is
// the cluster's count when the answer hard-matches the cluster, else 0.
struct RewardMatrix {
  std::vector<std::string> answers;
  std::vector<std::string> cluster_ids;
  WeightMatrix<std::int64_t> rewards;
  // Rows whose channel could not score the answer; those rows are all zero.
  std::vector<bool> missing_embedding;

  std::size_t rows() const { return rewards.rows(); }
  std::size_t cols() const { return rewards.cols(); }
  std::int64_t at(std::size_t r, std::size_t c) const { return rewards(r, c); }

  // Rows [0, n) as a new matrix.
  RewardMatrix prefix(std::size_t n) const;
};

struct Assignment {
  // Sorted by (answer index, cluster index); zero-reward pairs omitted.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::int64_t total_reward = 0;
};

RewardMatrix build_reward_matrix(std::span<const std::string> answers,
                                 const QuestionRecord& question,
                                 const ClusterMatcher& matcher);

// Maximum-total-reward one-to-one assignment. Among optimal assignments the
// lexicographically smallest pair set is returned.
Assignment optimal_assignment(const RewardMatrix& matrix);
Assignment optimal_assignment(const WeightMatrix<std::int64_t>& rewards);

}  // namespace clustereval
