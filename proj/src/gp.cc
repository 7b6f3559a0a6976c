#include "clustereval/gp.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "clustereval/text.h"

namespace clustereval {

namespace {

std::vector<double> parse_floats(const std::string& field, std::size_t lineno) {
  std::vector<double> out;
  const char* p = field.c_str();
  char* end = nullptr;
  for (;;) {
    while (*p == ' ') ++p;
    if (*p == '\0') break;
    const double v = std::strtod(p, &end);
    if (end == p || (*end != ' ' && *end != '\0'))
      throw ParseError(lineno, "malformed vector component");
    if (!std::isfinite(v)) throw ParseError(lineno, "non-finite component");
    out.push_back(v);
    p = end;
  }
  return out;
}

}  // namespace

EmbeddingStore EmbeddingStore::parse(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<EmbeddingStore> store;
  std::vector<std::string> comments;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      comments.push_back(line);
      continue;
    }
    if (!store) {
      std::size_t dim = 0;
      std::istringstream header(line);
      std::string rest;
      if (!(header >> dim) || (header >> rest) || dim == 0)
        throw ParseError(lineno, "expected a positive dimension header");
      store.emplace(dim);
      continue;
    }
    const auto tab1 = line.find('\t');
    const auto tab2 =
        tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos || line.find('\t', tab2 + 1) != line.npos)
      throw ParseError(lineno, "expected three tab-separated fields");
    auto vec = parse_floats(line.substr(tab2 + 1), lineno);
    if (vec.size() != store->dimension())
      throw ParseError(lineno, "vector has " + std::to_string(vec.size()) +
                                   " components, header declares " +
                                   std::to_string(store->dimension()));
    try {
      store->add(line.substr(0, tab1), line.substr(tab1 + 1, tab2 - tab1 - 1),
                 std::move(vec));
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!store) throw ParseError(0, "embedding file has no dimension header");
  store->comments_ = std::move(comments);
  return std::move(*store);
}

void EmbeddingStore::add(std::string_view question_id, std::string_view answer,
                         std::vector<double> vector) {
  if (vector.size() != dimension_)
    throw std::invalid_argument("vector dimension mismatch");
  for (double v : vector)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite component");
  auto key = std::make_pair(std::string(question_id), text::normalize(answer));
  auto [it, inserted] = vectors_.emplace(key, vector);
  if (!inserted && it->second != vector)
    throw std::invalid_argument("conflicting vectors for \"" + key.second +
                                "\" in question \"" + key.first + "\"");
}

const std::vector<double>* EmbeddingStore::find(std::string_view question_id,
                                                std::string_view answer) const {
  auto it = vectors_.find(
      std::make_pair(std::string(question_id), text::normalize(answer)));
  return it == vectors_.end() ? nullptr : &it->second;
}

MissingEmbedding::MissingEmbedding(const std::string& question_id,
                                   const std::string& answer)
    : std::runtime_error("no embedding for \"" + answer + "\" in question \"" +
                         question_id + "\""),
      answer_(answer) {}

double rbf_kernel(std::span<const double> a, std::span<const double> b,
                  double lengthscale) {
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sq += d * d;
  }
  return std::exp(-sq / (2.0 * lengthscale * lengthscale));
}

double median_pairwise_distance(
    const std::vector<std::vector<double>>& points) {
  std::vector<double> dists;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      double sq = 0.0;
      for (std::size_t d = 0; d < points[i].size(); ++d) {
        const double diff = points[i][d] - points[j][d];
        sq += diff * diff;
      }
      dists.push_back(std::sqrt(sq));
    }
  }
  if (dists.empty()) return 1.0;
  std::sort(dists.begin(), dists.end());
  const std::size_t mid = dists.size() / 2;
  const double median = dists.size() % 2 == 1
                            ? dists[mid]
                            : 0.5 * (dists[mid - 1] + dists[mid]);
  return median > 0.0 ? median : 1.0;
}

ClusterClassifier::ClusterClassifier(
    std::string cluster_id, std::shared_ptr<const GpTrainingSet> training,
    Eigen::VectorXd labels)
    : cluster_id_(std::move(cluster_id)),
      training_(std::move(training)),
      labels_(std::move(labels)),
      weights_(training_->factor.solve(labels_)) {}

double ClusterClassifier::posterior_mean(std::span<const double> x) const {
  const auto& inputs = training_->inputs;
  if (static_cast<Eigen::Index>(x.size()) != inputs.cols())
    throw std::invalid_argument("query vector dimension mismatch");
  const double scale = 2.0 * training_->lengthscale * training_->lengthscale;
  double mean = 0.0;
  for (Eigen::Index i = 0; i < inputs.rows(); ++i) {
    double sq = 0.0;
    for (Eigen::Index d = 0; d < inputs.cols(); ++d) {
      const double diff = inputs(i, d) - x[d];
      sq += diff * diff;
    }
    mean += weights_[i] * std::exp(-sq / scale);
  }
  return mean;
}

double ClusterClassifier::predict(std::span<const double> x) const {
  return std::clamp(posterior_mean(x), 0.0, 1.0);
}

std::vector<ClusterClassifier> fit_cluster_classifiers(
    const QuestionRecord& question, const EmbeddingStore& store,
    const GpOptions& options) {
  if (options.noise_variance <= 0.0)
    throw std::invalid_argument("noise variance must be positive");
  if (options.lengthscale && *options.lengthscale <= 0.0)
    throw std::invalid_argument("lengthscale must be positive");

  std::vector<const std::vector<double>*> rows;
  std::vector<std::size_t> row_cluster;
  for (std::size_t c = 0; c < question.clusters.size(); ++c) {
    for (const auto& member : question.clusters[c].answers) {
      const auto* vec = store.find(question.id, member);
      if (!vec) throw MissingEmbedding(question.id, member);
      rows.push_back(vec);
      row_cluster.push_back(c);
    }
  }

  auto training = std::make_shared<GpTrainingSet>();
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto dim = static_cast<Eigen::Index>(store.dimension());
  training->inputs.resize(n, dim);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index d = 0; d < dim; ++d)
      training->inputs(i, d) = (*rows[i])[d];

  if (options.lengthscale) {
    training->lengthscale = *options.lengthscale;
  } else {
    // Repeated surface forms share a vector; measure distinct points only.
    std::set<std::vector<double>> distinct;
    for (const auto* r : rows) distinct.insert(*r);
    training->lengthscale = median_pairwise_distance(
        std::vector<std::vector<double>>(distinct.begin(), distinct.end()));
  }
  training->noise_variance = options.noise_variance;

  Eigen::MatrixXd kernel(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double k =
          rbf_kernel(std::span<const double>(*rows[i]),
                     std::span<const double>(*rows[j]), training->lengthscale);
      kernel(i, j) = k;
      kernel(j, i) = k;
    }
  }
  kernel.diagonal().array() += options.noise_variance;

  double jitter = 0.0;
  for (;;) {
    Eigen::MatrixXd system = kernel;
    system.diagonal().array() += jitter;
    training->factor.compute(system);
    if (training->factor.info() == Eigen::Success) break;
    if (jitter >= options.max_jitter)
      throw std::runtime_error("kernel matrix for question \"" + question.id +
                               "\" is not positive definite");
    jitter = jitter == 0.0 ? options.min_jitter : jitter * 10.0;
  }
  training->jitter = jitter;

  std::shared_ptr<const GpTrainingSet> shared = std::move(training);
  std::vector<ClusterClassifier> classifiers;
  classifiers.reserve(question.clusters.size());
  for (std::size_t c = 0; c < question.clusters.size(); ++c) {
    Eigen::VectorXd labels(n);
    for (Eigen::Index i = 0; i < n; ++i)
      labels[i] = row_cluster[i] == c ? 1.0 : 0.0;
    classifiers.emplace_back(question.clusters[c].id, shared,
                             std::move(labels));
  }
  return classifiers;
}

VectorMatch vector_match(std::string_view answer,
                         const QuestionRecord& question,
                         const std::vector<ClusterClassifier>& classifiers,
                         const EmbeddingStore& store, double threshold) {
  VectorMatch result;
  const auto* vec = store.find(question.id, answer);
  if (!vec) {
    result.missing_embedding = true;
    return result;
  }
  std::optional<VectorAssignment> best;
  for (std::size_t c = 0; c < classifiers.size(); ++c) {
    const double score = classifiers[c].predict(*vec);
    const bool better =
        !best || score > best->score ||
        (score == best->score &&
         question.clusters[c].count > question.clusters[best->cluster_index].count);
    if (better) best = VectorAssignment{c, classifiers[c].cluster_id(), score};
  }
  if (best && best->score >= threshold) result.assignment = std::move(best);
  return result;
}

}  // namespace clustereval
