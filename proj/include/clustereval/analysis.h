#pragma once

#include <cstddef>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "clustereval/dataset.h"

namespace clustereval {

struct Triple {
  std::string head;
  std::string relation;
  std::string tail;
};

// Knowledge-base triples with content-keyword indexes over heads and tails.
class TripleStore {
 public:
  TripleStore() = default;

  // "head<TAB>relation<TAB>tail" per line.
  static TripleStore load(std::istream& in);

  void add(Triple triple);

  const std::vector<Triple>& triples() const { return triples_; }
  const std::set<std::string>& head_keywords(std::size_t i) const {
    return head_keywords_[i];
  }
  const std::set<std::string>& tail_keywords(std::size_t i) const {
    return tail_keywords_[i];
  }
  // Indices of triples whose head (or tail) contains the keyword.
  const std::vector<std::size_t>& with_head_keyword(const std::string& kw) const;
  const std::vector<std::size_t>& with_tail_keyword(const std::string& kw) const;

  std::size_t size() const { return triples_.size(); }

 private:
  std::vector<Triple> triples_;
  std::vector<std::set<std::string>> head_keywords_;
  std::vector<std::set<std::string>> tail_keywords_;
  std::unordered_map<std::string, std::vector<std::size_t>> head_index_;
  std::unordered_map<std::string, std::vector<std::size_t>> tail_index_;
};

std::set<std::string> keywords(std::string_view phrase);

// True iff one triple links a question keyword on one side to a keyword of
// any cluster member on the other side.
bool cluster_covered(std::string_view question, const AnswerCluster& cluster,
                     const TripleStore& store);

struct QuestionCoverage {
  std::string id;
  std::size_t clusters = 0;
  std::size_t covered = 0;
  std::vector<std::string> covered_cluster_ids;
  double fraction() const {
    return clusters ? static_cast<double>(covered) / clusters : 0.0;
  }
};

struct CoverageReport {
  std::vector<QuestionCoverage> questions;
  std::size_t total_clusters = 0;
  std::size_t covered_clusters = 0;
  double overall() const {
    return total_clusters
               ? static_cast<double>(covered_clusters) / total_clusters
               : 0.0;
  }
};

CoverageReport coverage_report(const std::vector<QuestionRecord>& dataset,
                               const TripleStore& store);

struct TransformResult {
  std::string prompt;
  bool rule_matched = false;
};

// Rewrites a survey question into a sentence prefix for completion, e.g.
// "Name something ..." -> "One thing ... is".
TransformResult transform_question(std::string_view question);

}  // namespace clustereval
