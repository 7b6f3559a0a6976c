#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clustereval {

enum class Source { kScraped, kCrowdsourced };

std::string_view to_string(Source source);

// A category of equivalent answers. `count` is the number of surveyed
// responses that fell into the category and is the reward for hitting it.
struct AnswerCluster {
  std::string id;
  std::int64_t count = 0;
  std::vector<std::string> answers;

  bool operator==(const AnswerCluster&) const = default;
};

struct QuestionRecord {
  std::string id;
  std::string question_original;
  std::string question_normalized;
  std::vector<AnswerCluster> clusters;
  std::vector<std::string> invalid_answers;
  Source source = Source::kCrowdsourced;

  std::int64_t total_count() const;

  bool operator==(const QuestionRecord&) const = default;
};

// Ranked answer lists keyed by question id, rank 1 first.
struct PredictionSet {
  std::map<std::string, std::vector<std::string>> entries;
};

// Raised for malformed or invalid input. `line()` is 1-based, 0 when the
// error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Lowercase, collapse whitespace, strip one trailing '.', '?' or '!'.
std::string normalize_question(std::string_view original);

std::vector<QuestionRecord> parse_dataset(std::istream& in);
PredictionSet parse_predictions(std::istream& in);

// One JSON line (no trailing newline) in the dataset schema.
std::string serialize_record(const QuestionRecord& record);
std::string serialize_prediction(const std::string& id,
                                 const std::vector<std::string>& answers);

struct ValidationVerdict {
  bool pass = true;
  std::int64_t top8_coverage = 0;
  std::int64_t total_responses = 0;
  std::vector<std::string> reasons;
};

inline constexpr std::size_t kValidationTopClusters = 8;
inline constexpr std::int64_t kValidationMinCoverage = 85;
inline constexpr std::int64_t kValidationSurveySize = 100;

// Crowdsourced questions whose eight largest clusters hold fewer than 85
// responses out of at least 100 collected fail. Scraped questions always pass.
ValidationVerdict validate_question(const QuestionRecord& record);

// Groups sampled answers by normalized text, orders groups by descending
// frequency (ties by first appearance) and keeps at most `cap`.
std::vector<std::string> rank_sampled_answers(
    std::span<const std::string> samples, std::size_t cap);

}  // namespace clustereval
