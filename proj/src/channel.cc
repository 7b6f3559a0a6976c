#include "clustereval/channel.h"

#include <algorithm>

namespace clustereval {

namespace {

class ExactMatcher final : public ClusterMatcher {
 public:
  explicit ExactMatcher(const QuestionRecord& q) : question_(q) {}
  MatchRow match(std::string_view answer) const override {
    MatchRow row;
    for (const auto& cluster : question_.clusters)
      row.hits.push_back(exact_match(answer, cluster).hard);
    return row;
  }

 private:
  const QuestionRecord& question_;
};

class WordnetMatcher final : public ClusterMatcher {
 public:
  WordnetMatcher(const QuestionRecord& q, const Lexicon& lex,
                 const WordnetOptions& options)
      : question_(q), lexicon_(lex), options_(options) {}
  MatchRow match(std::string_view answer) const override {
    MatchRow row;
    for (const auto& cluster : question_.clusters)
      row.hits.push_back(wordnet_match(answer, cluster, lexicon_, options_).hard);
    return row;
  }

 private:
  const QuestionRecord& question_;
  const Lexicon& lexicon_;
  WordnetOptions options_;
};

class VectorMatcher final : public ClusterMatcher {
 public:
  VectorMatcher(const QuestionRecord& q, const EmbeddingStore& store,
                std::vector<ClusterClassifier> classifiers, double threshold)
      : question_(q),
        store_(store),
        classifiers_(std::move(classifiers)),
        threshold_(threshold) {}
  MatchRow match(std::string_view answer) const override {
    MatchRow row;
    row.hits.assign(question_.clusters.size(), false);
    const auto m =
        vector_match(answer, question_, classifiers_, store_, threshold_);
    row.missing_embedding = m.missing_embedding;
    if (m.assignment) row.hits[m.assignment->cluster_index] = true;
    return row;
  }
  std::vector<std::pair<std::string, double>> parameters() const override {
    if (classifiers_.empty()) return {};
    const auto& c = classifiers_.front();
    return {{"lengthscale", c.lengthscale()},
            {"noise_variance", c.noise_variance()},
            {"jitter", c.jitter()}};
  }

 private:
  const QuestionRecord& question_;
  const EmbeddingStore& store_;
  std::vector<ClusterClassifier> classifiers_;
  double threshold_;
};

class ExactChannel final : public SimilarityChannel {
 public:
  SimilarityKind kind() const override { return SimilarityKind::kExact; }
  std::unique_ptr<ClusterMatcher> prepare(
      const QuestionRecord& q) const override {
    return std::make_unique<ExactMatcher>(q);
  }
};

class WordnetChannel final : public SimilarityChannel {
 public:
  WordnetChannel(const Lexicon& lex, WordnetOptions options)
      : lexicon_(lex), options_(options) {}
  SimilarityKind kind() const override { return SimilarityKind::kWordnet; }
  std::unique_ptr<ClusterMatcher> prepare(
      const QuestionRecord& q) const override {
    return std::make_unique<WordnetMatcher>(q, lexicon_, options_);
  }

 private:
  const Lexicon& lexicon_;
  WordnetOptions options_;
};

class VectorChannel final : public SimilarityChannel {
 public:
  VectorChannel(const EmbeddingStore& store, GpOptions options)
      : store_(store), options_(options) {}
  SimilarityKind kind() const override { return SimilarityKind::kVector; }
  std::unique_ptr<ClusterMatcher> prepare(
      const QuestionRecord& q) const override {
    try {
      return std::make_unique<VectorMatcher>(
          q, store_, fit_cluster_classifiers(q, store_, options_),
          options_.threshold);
    } catch (const std::runtime_error& e) {  // MissingEmbedding, factorization
      throw ResourceError(e.what());
    }
  }

 private:
  const EmbeddingStore& store_;
  GpOptions options_;
};

}  // namespace

std::string_view to_string(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::kExact: return "exact";
    case SimilarityKind::kWordnet: return "wordnet";
    case SimilarityKind::kVector: return "vector";
  }
  return "unknown";
}

std::string_view display_name(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::kExact: return "Exact Match";
    case SimilarityKind::kWordnet: return "WordNet Similarity";
    case SimilarityKind::kVector: return "Vector Similarity";
  }
  return "unknown";
}

std::optional<SimilarityKind> parse_similarity(std::string_view name) {
  if (name == "exact") return SimilarityKind::kExact;
  if (name == "wordnet") return SimilarityKind::kWordnet;
  if (name == "vector") return SimilarityKind::kVector;
  return std::nullopt;
}

bool MatchRow::any() const {
  return std::find(hits.begin(), hits.end(), true) != hits.end();
}

std::unique_ptr<SimilarityChannel> make_exact_channel() {
  return std::make_unique<ExactChannel>();
}

std::unique_ptr<SimilarityChannel> make_wordnet_channel(
    const Lexicon& lexicon, WordnetOptions options) {
  return std::make_unique<WordnetChannel>(lexicon, options);
}

std::unique_ptr<SimilarityChannel> make_vector_channel(
    const EmbeddingStore& store, GpOptions options) {
  return std::make_unique<VectorChannel>(store, options);
}

}  // namespace clustereval
