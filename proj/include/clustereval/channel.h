#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clustereval/dataset.h"
#include "clustereval/gp.h"
#include "clustereval/lexicon.h"
#include "clustereval/similarity.h"

namespace clustereval {

enum class SimilarityKind { kExact, kWordnet, kVector };

std::string_view to_string(SimilarityKind kind);
std::string_view display_name(SimilarityKind kind);
std::optional<SimilarityKind> parse_similarity(std::string_view name);

// Hard match decisions of one answer against every cluster of a question.
struct MatchRow {
  std::vector<bool> hits;  // one entry per cluster, file order
  bool missing_embedding = false;

  bool any() const;
};

// Per-question matcher. Immutable once prepared; safe to share.
class ClusterMatcher {
 public:
  virtual ~ClusterMatcher() = default;
  virtual MatchRow match(std::string_view answer) const = 0;
  // Fitted per-question hyperparameters worth recording in reports.
  virtual std::vector<std::pair<std::string, double>> parameters() const {
    return {};
  }
};

// Raised by prepare() when a question cannot be scored because a channel
// resource (e.g. a reference embedding) is missing.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SimilarityChannel {
 public:
  virtual ~SimilarityChannel() = default;
  virtual SimilarityKind kind() const = 0;
  virtual std::unique_ptr<ClusterMatcher> prepare(
      const QuestionRecord& question) const = 0;
};

std::unique_ptr<SimilarityChannel> make_exact_channel();
// The lexicon must outlive the channel.
std::unique_ptr<SimilarityChannel> make_wordnet_channel(
    const Lexicon& lexicon, WordnetOptions options = {});
// The store must outlive the channel.
std::unique_ptr<SimilarityChannel> make_vector_channel(
    const EmbeddingStore& store, GpOptions options = {});

}  // namespace clustereval
