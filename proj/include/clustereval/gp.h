#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "clustereval/dataset.h"

namespace clustereval {

// Answer vectors keyed by (question id, normalized answer text).
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::size_t dimension = 0) : dimension_(dimension) {}

  // Header line with the dimension, then "qid<TAB>answer<TAB>floats" records.
  // Lines starting with '#' are comments and are kept verbatim.
  static EmbeddingStore parse(std::istream& in);

  void add(std::string_view question_id, std::string_view answer,
           std::vector<double> vector);
  const std::vector<double>* find(std::string_view question_id,
                                  std::string_view answer) const;

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<std::string>& comments() const { return comments_; }

 private:
  std::size_t dimension_;
  std::map<std::pair<std::string, std::string>, std::vector<double>> vectors_;
  std::vector<std::string> comments_;
};

class MissingEmbedding : public std::runtime_error {
 public:
  MissingEmbedding(const std::string& question_id, const std::string& answer);
  const std::string& answer() const { return answer_; }

 private:
  std::string answer_;
};

struct GpOptions {
  // Median pairwise distance of the reference vectors when unset.
  std::optional<double> lengthscale;
  double noise_variance = 0.01;
  double min_jitter = 1e-8;
  double max_jitter = 1e-4;
  // Minimum membership score for an assignment.
  double threshold = 0.1;
};

// Training state shared by every classifier of one question: the reference
// vectors and the factorized regularized kernel matrix.
struct GpTrainingSet {
  Eigen::MatrixXd inputs;  // one reference vector per row
  double lengthscale = 1.0;
  double noise_variance = 0.01;
  double jitter = 0.0;
  Eigen::LLT<Eigen::MatrixXd> factor;
};

// One-vs-all membership scorer for a single cluster: the GP regression
// posterior mean under an RBF kernel, clamped to [0, 1].
class ClusterClassifier {
 public:
  ClusterClassifier(std::string cluster_id,
                    std::shared_ptr<const GpTrainingSet> training,
                    Eigen::VectorXd labels);

  const std::string& cluster_id() const { return cluster_id_; }
  const Eigen::VectorXd& labels() const { return labels_; }
  double lengthscale() const { return training_->lengthscale; }
  double noise_variance() const { return training_->noise_variance; }
  double jitter() const { return training_->jitter; }

  // Unclamped posterior mean.
  double posterior_mean(std::span<const double> x) const;
  double predict(std::span<const double> x) const;

 private:
  std::string cluster_id_;
  std::shared_ptr<const GpTrainingSet> training_;
  Eigen::VectorXd labels_;
  Eigen::VectorXd weights_;  // (K + noise I)^-1 labels
};

double rbf_kernel(std::span<const double> a, std::span<const double> b,
                  double lengthscale);

// Median of the pairwise Euclidean distances; 1.0 when undefined or zero.
double median_pairwise_distance(const std::vector<std::vector<double>>& points);

// Trains one classifier per cluster on every reference answer of the
// question. Throws MissingEmbedding or std::runtime_error when the kernel
// system cannot be factorized.
std::vector<ClusterClassifier> fit_cluster_classifiers(
    const QuestionRecord& question, const EmbeddingStore& store,
    const GpOptions& options = {});

struct VectorAssignment {
  std::size_t cluster_index = 0;
  std::string cluster_id;
  double score = 0.0;
};

struct VectorMatch {
  std::optional<VectorAssignment> assignment;
  bool missing_embedding = false;
};

// Highest-scoring cluster if its score reaches the threshold. Exact score
// ties go to the larger cluster, then the earlier one.
VectorMatch vector_match(std::string_view answer,
                         const QuestionRecord& question,
                         const std::vector<ClusterClassifier>& classifiers,
                         const EmbeddingStore& store,
                         double threshold = GpOptions{}.threshold);

}  // namespace clustereval
