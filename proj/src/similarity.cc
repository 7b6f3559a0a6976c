#include "clustereval/similarity.h"

#include <algorithm>
#include <string>
#include <vector>

#include "clustereval/hungarian.h"
#include "clustereval/text.h"

namespace clustereval {

namespace {

bool intersects(const std::vector<SynsetId>& a, const std::vector<SynsetId>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

// All contiguous spans of a token sequence, addressed by (begin, end).
class SpanTable {
 public:
  SpanTable(const text::TokenSequence& tokens, const Lexicon& lex)
      : n_(tokens.size()), text_(n_ * n_), ids_(n_ * n_) {
    for (std::size_t b = 0; b < n_; ++b) {
      std::string joined;
      for (std::size_t e = b; e < n_; ++e) {
        if (e > b) joined.push_back(' ');
        joined += tokens[e];
        text_[index(b, e + 1)] = joined;
        ids_[index(b, e + 1)] = lex.synset_ids(joined);
      }
    }
  }

  std::size_t size() const { return n_; }
  std::size_t index(std::size_t begin, std::size_t end) const {
    return begin * n_ + (end - 1);
  }
  const std::string& text(std::size_t i) const { return text_[i]; }
  const std::vector<SynsetId>& ids(std::size_t i) const { return ids_[i]; }

 private:
  std::size_t n_;
  std::vector<std::string> text_;
  std::vector<std::vector<SynsetId>> ids_;
};

// Each partition is a list of span indices into a SpanTable. Bit i of the
// cut mask splits between token i and token i + 1.
std::vector<std::vector<std::size_t>> enumerate_partitions(
    const SpanTable& spans, const WordnetOptions& options) {
  const std::size_t n = spans.size();
  const std::size_t gaps = n - 1;
  const std::size_t all_cuts = (std::size_t{1} << gaps) - 1;
  std::vector<std::size_t> masks;
  if (!options.partitions) {
    masks.push_back(all_cuts);
  } else if (n > options.partition_cap) {
    masks.push_back(0);
    masks.push_back(all_cuts);
  } else {
    for (std::size_t m = 0; m <= all_cuts; ++m) masks.push_back(m);
  }

  std::vector<std::vector<std::size_t>> partitions;
  partitions.reserve(masks.size());
  for (std::size_t mask : masks) {
    std::vector<std::size_t> parts;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < gaps; ++i) {
      if (mask & (std::size_t{1} << i)) {
        parts.push_back(spans.index(begin, i + 1));
        begin = i + 1;
      }
    }
    parts.push_back(spans.index(begin, n));
    partitions.push_back(std::move(parts));
  }
  return partitions;
}

}  // namespace

MatchScore exact_match(std::string_view answer, const AnswerCluster& cluster) {
  const std::string norm = text::normalize(answer);
  if (norm.empty()) return MatchScore::rounded(0.0);
  for (const auto& member : cluster.answers) {
    if (text::normalize(member) == norm) return MatchScore::rounded(1.0);
  }
  return MatchScore::rounded(0.0);
}

double wordnet_token_score(std::string_view a, std::string_view b,
                           const Lexicon& lex) {
  const std::string na = text::normalize(a);
  if (!na.empty() && na == text::normalize(b)) return 1.0;
  return intersects(lex.synset_ids(a), lex.synset_ids(b)) ? 1.0 : 0.0;
}

double wordnet_answer_score(std::string_view answer, std::string_view reference,
                            const Lexicon& lex, const WordnetOptions& options) {
  const auto tokens_a = text::tokenize_content(answer);
  const auto tokens_b = text::tokenize_content(reference);
  if (tokens_a.empty() || tokens_b.empty()) {
    const std::string na = text::normalize(answer);
    return !na.empty() && na == text::normalize(reference) ? 1.0 : 0.0;
  }

  const SpanTable spans_a(tokens_a, lex);
  const SpanTable spans_b(tokens_b, lex);
  const auto parts_a = enumerate_partitions(spans_a, options);
  const auto parts_b = enumerate_partitions(spans_b, options);

  // Span-pair scores are shared by every partition pair.
  const std::size_t na = tokens_a.size() * tokens_a.size();
  const std::size_t nb = tokens_b.size() * tokens_b.size();
  std::vector<double> span_score(na * nb, -1.0);
  auto score_of = [&](std::size_t sa, std::size_t sb) {
    double& s = span_score[sa * nb + sb];
    if (s < 0.0) {
      s = (spans_a.text(sa) == spans_b.text(sb) ||
           intersects(spans_a.ids(sa), spans_b.ids(sb)))
              ? 1.0
              : 0.0;
    }
    return s;
  };

  double best = 0.0;
  for (const auto& pa : parts_a) {
    for (const auto& pb : parts_b) {
      const double denom = static_cast<double>(std::max(pa.size(), pb.size()));
      const double bound =
          static_cast<double>(std::min(pa.size(), pb.size())) / denom;
      if (bound <= best) continue;
      WeightMatrix<double> weights(pa.size(), pb.size());
      bool any = false;
      for (std::size_t i = 0; i < pa.size(); ++i) {
        for (std::size_t j = 0; j < pb.size(); ++j) {
          weights(i, j) = score_of(pa[i], pb[j]);
          any = any || weights(i, j) > 0.0;
        }
      }
      if (!any) continue;
      best = std::max(best, max_weight_assignment(weights) / denom);
      if (best >= 1.0) return 1.0;
    }
  }
  return best;
}

MatchScore wordnet_match(std::string_view answer, const AnswerCluster& cluster,
                         const Lexicon& lex, const WordnetOptions& options) {
  double best = 0.0;
  for (const auto& member : cluster.answers) {
    best = std::max(best, wordnet_answer_score(answer, member, lex, options));
    if (best >= 1.0) break;
  }
  return MatchScore::rounded(best);
}

}  // namespace clustereval
