#include "clustereval/dataset.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "json.hpp"

#include "clustereval/text.h"

namespace clustereval {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\r';
  });
}

json parse_line(const std::string& line, std::size_t lineno) {
  try {
    json value = json::parse(line);
    if (!value.is_object()) throw ParseError(lineno, "expected a JSON object");
    return value;
  } catch (const json::parse_error& e) {
    throw ParseError(lineno, std::string("invalid JSON: ") + e.what());
  }
}

const json& require(const json& obj, const char* key, std::size_t lineno) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError(lineno, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string require_string(const json& obj, const char* key,
                           std::size_t lineno) {
  const json& v = require(obj, key, lineno);
  if (!v.is_string())
    throw ParseError(lineno, std::string("field \"") + key +
                                 "\" must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list(const json& v, const char* what,
                                     std::size_t lineno) {
  if (!v.is_array())
    throw ParseError(lineno, std::string(what) + " must be an array");
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& item : v) {
    if (!item.is_string())
      throw ParseError(lineno, std::string(what) + " must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

Source parse_source(const std::string& s, std::size_t lineno) {
  if (s == "scraped") return Source::kScraped;
  if (s == "crowdsourced") return Source::kCrowdsourced;
  throw ParseError(lineno, "unknown source \"" + s + "\"");
}

AnswerCluster parse_cluster(const json& obj, Source source,
                            std::size_t lineno) {
  if (!obj.is_object()) throw ParseError(lineno, "cluster must be an object");
  AnswerCluster cluster;
  cluster.id = require_string(obj, "id", lineno);
  const json& count = require(obj, "count", lineno);
  if (!count.is_number_integer())
    throw ParseError(lineno, "cluster \"" + cluster.id +
                                 "\": count must be an integer");
  cluster.count = count.get<std::int64_t>();
  if (cluster.count < 1)
    throw ParseError(lineno, "cluster \"" + cluster.id +
                                 "\": count must be at least 1");
  cluster.answers = string_list(require(obj, "answers", lineno),
                                "cluster answers", lineno);
  if (cluster.answers.empty())
    throw ParseError(lineno, "cluster \"" + cluster.id + "\" has no answers");
  for (const auto& a : cluster.answers) {
    if (text::normalize(a).empty())
      throw ParseError(lineno, "cluster \"" + cluster.id +
                                   "\" has an empty answer");
  }
  if (source == Source::kCrowdsourced &&
      cluster.count != static_cast<std::int64_t>(cluster.answers.size())) {
    throw ParseError(lineno, "crowdsourced cluster \"" + cluster.id +
                                 "\": count " + std::to_string(cluster.count) +
                                 " differs from its " +
                                 std::to_string(cluster.answers.size()) +
                                 " answers");
  }
  return cluster;
}

}  // namespace

std::string_view to_string(Source source) {
  return source == Source::kScraped ? "scraped" : "crowdsourced";
}

std::int64_t QuestionRecord::total_count() const {
  std::int64_t total = 0;
  for (const auto& c : clusters) total += c.count;
  return total;
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0
                             ? "line " + std::to_string(line) + ": " + message
                             : message),
      line_(line) {}

std::string normalize_question(std::string_view original) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : original) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                         : static_cast<char>(c));
  }
  if (!out.empty() &&
      (out.back() == '.' || out.back() == '?' || out.back() == '!')) {
    out.pop_back();
    while (!out.empty() && out.back() == ' ') out.pop_back();
  }
  return out;
}

std::vector<QuestionRecord> parse_dataset(std::istream& in) {
  std::vector<QuestionRecord> records;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    const json obj = parse_line(line, lineno);

    QuestionRecord rec;
    rec.id = require_string(obj, "id", lineno);
    if (rec.id.empty()) throw ParseError(lineno, "empty question id");
    if (!seen.insert(rec.id).second)
      throw ParseError(lineno, "duplicate question id \"" + rec.id + "\"");

    const json& question = require(obj, "question", lineno);
    if (!question.is_object())
      throw ParseError(lineno, "field \"question\" must be an object");
    rec.question_original = require_string(question, "original", lineno);
    rec.question_normalized = normalize_question(rec.question_original);
    rec.source = parse_source(require_string(obj, "source", lineno), lineno);

    const json& clusters = require(obj, "clusters", lineno);
    if (!clusters.is_array())
      throw ParseError(lineno, "field \"clusters\" must be an array");
    if (clusters.empty())
      throw ParseError(lineno, "question \"" + rec.id + "\" has no clusters");
    std::set<std::string> cluster_ids;
    for (const auto& c : clusters) {
      rec.clusters.push_back(parse_cluster(c, rec.source, lineno));
      if (!cluster_ids.insert(rec.clusters.back().id).second)
        throw ParseError(lineno, "duplicate cluster id \"" +
                                     rec.clusters.back().id + "\"");
    }
    if (auto it = obj.find("invalid"); it != obj.end())
      rec.invalid_answers = string_list(*it, "invalid", lineno);
    records.push_back(std::move(rec));
  }
  return records;
}

PredictionSet parse_predictions(std::istream& in) {
  PredictionSet set;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    const json obj = parse_line(line, lineno);
    std::string id = require_string(obj, "id", lineno);
    if (id.empty()) throw ParseError(lineno, "empty question id");
    auto answers = string_list(require(obj, "ranked_answers", lineno),
                               "ranked_answers", lineno);
    for (const auto& a : answers) {
      if (text::normalize(a).empty())
        throw ParseError(lineno, "empty answer in ranked list for \"" + id +
                                     "\"");
    }
    if (!set.entries.emplace(id, std::move(answers)).second)
      throw ParseError(lineno, "duplicate question id \"" + id + "\"");
  }
  return set;
}

std::string serialize_record(const QuestionRecord& record) {
  ordered_json obj;
  obj["id"] = record.id;
  obj["question"] = ordered_json{{"original", record.question_original}};
  obj["source"] = std::string(to_string(record.source));
  ordered_json clusters = ordered_json::array();
  for (const auto& c : record.clusters) {
    ordered_json cj;
    cj["id"] = c.id;
    cj["count"] = c.count;
    cj["answers"] = c.answers;
    clusters.push_back(std::move(cj));
  }
  obj["clusters"] = std::move(clusters);
  if (!record.invalid_answers.empty()) obj["invalid"] = record.invalid_answers;
  return obj.dump();
}

std::string serialize_prediction(const std::string& id,
                                 const std::vector<std::string>& answers) {
  ordered_json obj;
  obj["id"] = id;
  obj["ranked_answers"] = answers;
  return obj.dump();
}

ValidationVerdict validate_question(const QuestionRecord& record) {
  ValidationVerdict verdict;
  std::vector<std::int64_t> counts;
  for (const auto& c : record.clusters) counts.push_back(c.count);
  std::sort(counts.begin(), counts.end(), std::greater<>());
  const std::size_t top = std::min(counts.size(), kValidationTopClusters);
  for (std::size_t i = 0; i < top; ++i) verdict.top8_coverage += counts[i];
  verdict.total_responses =
      record.total_count() +
      static_cast<std::int64_t>(record.invalid_answers.size());

  if (record.source != Source::kCrowdsourced) {
    verdict.reasons.push_back("scraped question: coverage rule not applied");
    return verdict;
  }
  if (verdict.total_responses < kValidationSurveySize) {
    verdict.reasons.push_back("only " +
                              std::to_string(verdict.total_responses) +
                              " responses collected");
    return verdict;
  }
  if (verdict.top8_coverage < kValidationMinCoverage) {
    verdict.pass = false;
    verdict.reasons.push_back("top-8 clusters cover " +
                              std::to_string(verdict.top8_coverage) +
                              " responses, need " +
                              std::to_string(kValidationMinCoverage));
  }
  return verdict;
}

std::vector<std::string> rank_sampled_answers(
    std::span<const std::string> samples, std::size_t cap) {
  struct Group {
    std::string text;
    std::size_t count = 0;
    std::size_t first = 0;
  };
  std::vector<Group> groups;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::string key = text::normalize(samples[i]);
    if (key.empty()) continue;
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) groups.push_back({std::move(key), 0, i});
    ++groups[it->second].count;
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const Group& a, const Group& b) {
                     return a.count > b.count;
                   });
  std::vector<std::string> ranked;
  for (std::size_t i = 0; i < groups.size() && i < cap; ++i)
    ranked.push_back(std::move(groups[i].text));
  return ranked;
}

}  // namespace clustereval
