#pragma once

#include <cstddef>
#include <string_view>

#include "clustereval/dataset.h"
#include "clustereval/lexicon.h"

namespace clustereval {

// Scores at or above this round to a hard match.
inline constexpr double kRoundingThreshold = 0.5;

struct MatchScore {
  double value = 0.0;
  bool hard = false;

  static MatchScore rounded(double value) {
    return {value, value >= kRoundingThreshold};
  }
};

// 1 iff the normalized answer equals a normalized cluster member.
MatchScore exact_match(std::string_view answer, const AnswerCluster& cluster);

struct WordnetOptions {
  // When false only all-singleton spans are compared.
  bool partitions = true;
  // Token sequences longer than this are compared with the whole-string and
  // all-singleton partitions only.
  std::size_t partition_cap = 12;
};

// 1 if the two strings are equal after normalization or share a synset.
double wordnet_token_score(std::string_view a, std::string_view b,
                           const Lexicon& lex);

// Best normalized span matching over all pairs of contiguous-span
// partitions of the two content-token sequences. Symmetric.
double wordnet_answer_score(std::string_view answer, std::string_view reference,
                            const Lexicon& lex,
                            const WordnetOptions& options = {});

// Maximum wordnet_answer_score over the cluster's members, rounded.
MatchScore wordnet_match(std::string_view answer, const AnswerCluster& cluster,
                         const Lexicon& lex,
                         const WordnetOptions& options = {});

}  // namespace clustereval
