#include "clustereval/report.h"

#include <cstdio>
#include <sstream>

namespace clustereval {

using nlohmann::ordered_json;

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", fraction * 100.0);
  return buf;
}

ordered_json report_to_json(const EvalReport& report) {
  ordered_json out;
  out["similarity"] = std::string(to_string(report.similarity));
  out["evaluated_questions"] = report.questions.size();

  ordered_json aggregate = ordered_json::array();
  for (const auto& cell : report.aggregate) {
    ordered_json c;
    c["similarity"] = std::string(to_string(report.similarity));
    c["metric"] = std::string(to_string(cell.metric));
    c["k"] = cell.k;
    c["mean"] = cell.mean;
    c["percent"] = format_percent(cell.mean);
    c["questions"] = cell.questions;
    aggregate.push_back(std::move(c));
  }
  out["aggregate"] = std::move(aggregate);

  ordered_json questions = ordered_json::array();
  for (const auto& q : report.questions) {
    ordered_json qj;
    qj["id"] = q.id;
    qj["answers_given"] = q.answers_given;
    qj["truncated"] = q.truncated;
    qj["missing_embeddings"] = q.missing_embeddings;
    qj["unmatched_answers"] = q.unmatched_answers;
    if (!q.channel_parameters.empty()) {
      ordered_json params = ordered_json::object();
      for (const auto& [name, value] : q.channel_parameters)
        params[name] = value;
      qj["channel_parameters"] = std::move(params);
    }
    ordered_json scores = ordered_json::array();
    for (const auto& s : q.scores) {
      ordered_json sj;
      sj["metric"] = std::string(to_string(s.metric));
      sj["k"] = s.k;
      sj["raw_reward"] = s.raw_reward;
      sj["oracle_reward"] = s.oracle_reward;
      sj["normalized"] = s.normalized;
      sj["answers_scored"] = s.answers_scored;
      ordered_json pairs = ordered_json::array();
      for (const auto& p : s.pairs) {
        ordered_json pj;
        pj["rank"] = p.rank;
        pj["answer"] = p.answer;
        pj["cluster"] = p.cluster_id;
        pj["reward"] = p.reward;
        pairs.push_back(std::move(pj));
      }
      sj["pairs"] = std::move(pairs);
      scores.push_back(std::move(sj));
    }
    qj["scores"] = std::move(scores);
    questions.push_back(std::move(qj));
  }
  out["questions"] = std::move(questions);

  const auto& d = report.diagnostics;
  ordered_json diag;
  diag["unknown_prediction_ids"] = d.unknown_prediction_ids;
  ordered_json skipped = ordered_json::array();
  for (const auto& s : d.skipped)
    skipped.push_back(ordered_json{{"id", s.id}, {"reason", s.reason}});
  diag["skipped_questions"] = std::move(skipped);
  diag["truncated_lists"] = d.truncated_lists;
  diag["missing_embeddings"] = d.missing_embeddings;
  diag["unmatched_answers"] = d.unmatched_answers;
  out["diagnostics"] = std::move(diag);
  return out;
}

std::string format_table(const EvalReport& report) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "%-20s %-14s %4s %8s\n", "Similarity",
                "Metric", "k", "Score %");
  out << line;
  if (report.aggregate.empty()) {
    out << "(no questions evaluated)\n";
    return out.str();
  }
  const std::string sim(display_name(report.similarity));
  for (std::size_t i = 0; i < report.aggregate.size(); ++i) {
    const auto& cell = report.aggregate[i];
    const bool first_of_metric =
        i == 0 || report.aggregate[i - 1].metric != cell.metric;
    std::snprintf(line, sizeof line, "%-20s %-14s %4d %8s\n",
                  i == 0 ? sim.c_str() : "",
                  first_of_metric ? std::string(display_name(cell.metric)).c_str()
                                  : "",
                  cell.k, format_percent(cell.mean).c_str());
    out << line;
  }
  std::snprintf(line, sizeof line, "questions evaluated: %zu\n",
                report.questions.size());
  out << line;
  return out.str();
}

}  // namespace clustereval
